r"""Boundary strata of genus-one moduli spaces as rooted partitions.

A stratum records which marked points sit on the principal genus-one
component of a stable curve and how the remaining points are distributed
over rational bubbles, each attached directly to the torus and carrying at
least two points.  Writing ``A1(U)`` for the set of such rooted partitions
of a label set ``U``, the strata relevant to the blowup bookkeeping form

    ``A1(I, J) = { rho in A1(I u J) : every bubble of rho meets I }``.

The degeneration order ``precedes(a, b)``, true when every bubble of ``b``
sits inside a bubble of ``a``, is the order in which blowups must be
performed; :func:`linear_extension` produces compatible total orders.

Three structural maps mirror how the strata transform:

* :func:`mu` collapses a bubble pair ``(i, j)`` to a fresh attaching label
  and is an isomorphism of posets from ``{rho : rho strictly below the
  (i, j) two-point stratum}`` onto ``A1((I - {i}) u {p}, J - {j})``;
* :func:`eta` merges a puncture pair ``(j, jstar)`` lying in one part and is
  an isomorphism onto ``A1(I, (J - {j, jstar}) u {p})``;
* :func:`forget_stratum` drops a puncture, possibly dissolving a two-point
  bubble; its fibers are produced by :func:`fiber`, and the strata sent to
  the bubble-free sentinel are exactly the ``(i, jstar)`` two-point strata,
  one per element of ``I`` (:func:`sentinel_fiber_count`).

Everything is brute force over set partitions, exact, and feasible through
universes of eight labels or so; no clever counting is attempted.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "Label",
    "AUX_P",
    "AUX_Q",
    "i_labels",
    "j_labels",
    "RootedPartition",
    "canonical_text",
    "enumerate_A1",
    "enumerate_A1_IJ",
    "precedes",
    "pair_stratum",
    "linear_extension",
    "mu",
    "eta",
    "forget_stratum",
    "fiber",
    "sentinel_fiber_count",
]


@dataclass(frozen=True)
class Label:
    """A marked-point name.  ``kind`` is the namespace: ``"i"`` for the
    blown-up set, ``"j"`` for the puncture set, ``"p"``/``"q"`` for the
    attaching points created by the structural maps."""

    kind: str
    index: int | str = 0

    def __post_init__(self):
        if self.kind not in ("i", "j", "p", "q"):
            raise ValueError(f"unknown label kind {self.kind!r}")

    def sort_key(self):
        return (self.kind, str(self.index))

    def __repr__(self):
        return f"{self.kind}{self.index}"


#: Default attaching labels.  `mu` puts AUX_P on the blown-up side of its
#: target split, `eta` on the puncture side; the label itself is the same.
AUX_P = Label("p")
AUX_Q = Label("q")


def i_labels(count: int) -> frozenset[Label]:
    """The standard blown-up label set ``{i0, ..., i(count-1)}``."""
    return frozenset(Label("i", k) for k in range(count))


def j_labels(count: int) -> frozenset[Label]:
    """The standard puncture label set ``{j0, ..., j(count-1)}``."""
    return frozenset(Label("j", k) for k in range(count))


@dataclass(frozen=True)
class RootedPartition:
    """A stratum: the principal label set plus a set of bubbles.

    Bubbles are pairwise disjoint label sets of size at least two, disjoint
    from the principal part.  The bubble-free value ``(P, {})`` is allowed
    as the sentinel image of the forgetful map but is never itself a
    stratum; enumeration functions never produce it.
    """

    principal: frozenset[Label]
    bubbles: frozenset[frozenset[Label]]

    def __post_init__(self):
        object.__setattr__(self, "principal", frozenset(self.principal))
        object.__setattr__(
            self, "bubbles", frozenset(frozenset(b) for b in self.bubbles)
        )
        if any(len(b) < 2 for b in self.bubbles):
            raise ValueError("every bubble carries at least two labels")
        total = len(self.principal) + sum(len(b) for b in self.bubbles)
        if len(self.universe) != total:
            raise ValueError("principal part and bubbles must be pairwise disjoint")

    @property
    def universe(self) -> frozenset[Label]:
        return self.principal.union(*self.bubbles) if self.bubbles else self.principal

    @property
    def is_sentinel(self) -> bool:
        return not self.bubbles

    def __repr__(self):
        return canonical_text(self)


def canonical_text(rho: RootedPartition) -> str:
    """Deterministic serialization: labels sorted, bubbles ordered by their
    smallest label.  Used as the tie-break for linear extensions."""
    part = ",".join(f"{x.kind}{x.index}" for x in sorted(rho.principal, key=Label.sort_key))
    bubbles = sorted(
        (sorted(b, key=Label.sort_key) for b in rho.bubbles),
        key=lambda b: b[0].sort_key(),
    )
    body = " ".join("{" + ",".join(f"{x.kind}{x.index}" for x in b) + "}" for b in bubbles)
    return f"[{part}|{body}]"


def _block_partitions(items: tuple):
    """Partitions of ``items`` into unordered blocks of size >= 2."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for size in range(1, len(rest) + 1):
        for mates in combinations(range(len(rest)), size):
            chosen = set(mates)
            block = (first,) + tuple(rest[k] for k in mates)
            remaining = tuple(x for k, x in enumerate(rest) if k not in chosen)
            for tail in _block_partitions(remaining):
                yield (block,) + tail


def enumerate_A1(universe) -> set[RootedPartition]:
    """All rooted partitions of ``universe`` with at least one bubble.

    Empty when the universe has fewer than two labels, since no bubble of
    size two can form.
    """
    items = tuple(sorted(frozenset(universe), key=Label.sort_key))
    found: set[RootedPartition] = set()
    for r in range(0, max(len(items) - 1, 0)):
        for principal in combinations(items, r):
            rest = tuple(x for x in items if x not in principal)
            for blocks in _block_partitions(rest):
                found.add(
                    RootedPartition(frozenset(principal), frozenset(map(frozenset, blocks)))
                )
    return found


def enumerate_A1_IJ(I, J) -> set[RootedPartition]:
    """The strata of ``I u J`` whose every bubble meets ``I``.

    Empty whenever ``I`` is empty: a bubble cannot meet an empty set, which
    matches the fact that nothing gets blown up in that case.
    """
    I, J = frozenset(I), frozenset(J)
    if I & J:
        raise ValueError("the blown-up and puncture label sets must be disjoint")
    if not I:
        return set()
    return {rho for rho in enumerate_A1(I | J) if all(b & I for b in rho.bubbles)}


def precedes(a: RootedPartition, b: RootedPartition) -> bool:
    """Degeneration order: ``a`` strictly precedes ``b`` when every bubble of
    ``b`` lies inside some bubble of ``a``.

    ``a`` is then the more degenerate stratum (larger, merged bubbles).  The
    order is strict: ``precedes(x, x)`` is false.  The bubble-free sentinel
    compares above every stratum.
    """
    if a.universe != b.universe:
        raise ValueError("strata live over different marked-point sets")
    if a == b:
        return False
    return all(any(small <= big for big in a.bubbles) for small in b.bubbles)


def pair_stratum(universe, a: Label, b: Label) -> RootedPartition:
    """The maximal stratum whose single bubble is ``{a, b}``."""
    universe = frozenset(universe)
    if a == b or a not in universe or b not in universe:
        raise ValueError("need two distinct labels from the universe")
    return RootedPartition(universe - {a, b}, frozenset({frozenset({a, b})}))


def linear_extension(strata, constraints=()) -> list[RootedPartition]:
    """A deterministic total order of ``strata`` extending the degeneration
    order and the extra ``(earlier, later)`` pairs in ``constraints``.

    Kahn's algorithm with the canonical serialization as tie-break, so the
    output is reproducible across runs.  Raises ``ValueError`` when the
    constraints contradict the partial order (or each other).
    """
    nodes = sorted(set(strata), key=canonical_text)
    position = {rho: k for k, rho in enumerate(nodes)}
    after: dict[RootedPartition, set[RootedPartition]] = {rho: set() for rho in nodes}
    indegree = {rho: 0 for rho in nodes}

    def add_edge(a, b):
        if b not in after[a]:
            after[a].add(b)
            indegree[b] += 1

    for a in nodes:
        for b in nodes:
            if precedes(a, b):
                add_edge(a, b)
    for a, b in constraints:
        if a not in position or b not in position:
            raise ValueError("constraint mentions a stratum outside the input set")
        add_edge(a, b)

    ready = [position[rho] for rho in nodes if indegree[rho] == 0]
    heapq.heapify(ready)
    order: list[RootedPartition] = []
    while ready:
        rho = nodes[heapq.heappop(ready)]
        order.append(rho)
        for nxt in after[rho]:
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                heapq.heappush(ready, position[nxt])
    if len(order) != len(nodes):
        stuck = min((rho for rho in nodes if indegree[rho] > 0), key=canonical_text)
        raise ValueError(
            f"constraints contradict the degeneration order; cycle through {canonical_text(stuck)}"
        )
    return order


def _bubble_with(rho: RootedPartition, labels: frozenset[Label]):
    return next((b for b in rho.bubbles if labels <= b), None)


def mu(rho: RootedPartition, i: Label, j: Label, p: Label = AUX_P) -> RootedPartition:
    """Collapse the bubble portion ``{i, j}`` of ``rho`` to the fresh
    attaching label ``p``.

    Defined exactly on strata strictly below the ``(i, j)`` two-point
    stratum, i.e. those keeping ``i`` and ``j`` together inside one bubble.
    A bubble equal to ``{i, j}`` dissolves and ``p`` joins the principal
    part; a larger bubble keeps its other labels and gains ``p``.  On the
    target split ``p`` counts as a blown-up label.
    """
    if not precedes(rho, pair_stratum(rho.universe, i, j)):
        raise ValueError("mu needs a stratum strictly below the (i, j) two-point stratum")
    if p in rho.universe:
        raise ValueError(f"attaching label {p!r} already in use")
    bubble = _bubble_with(rho, frozenset({i, j}))
    if bubble == {i, j}:
        return RootedPartition(rho.principal | {p}, rho.bubbles - {bubble})
    return RootedPartition(
        rho.principal, (rho.bubbles - {bubble}) | {(bubble - {i, j}) | {p}}
    )


def eta(rho: RootedPartition, j: Label, jstar: Label, p: Label = AUX_P) -> RootedPartition:
    """Merge the puncture pair ``{j, jstar}`` of ``rho`` into the fresh
    attaching label ``p``.

    Defined on strata other than the ``(j, jstar)`` two-point stratum that
    keep the pair together in one part (principal or bubble).  On the target
    split ``p`` counts as a puncture label.  A bubble consisting of the pair
    alone cannot occur when every bubble carries a blown-up label, so that
    case is asserted unreachable.
    """
    if j.kind == "i" or jstar.kind == "i":
        raise ValueError("eta acts on puncture-side labels")
    pair = frozenset({j, jstar})
    if len(pair) != 2 or not pair <= rho.universe:
        raise ValueError("need two distinct labels of the stratum")
    if p in rho.universe:
        raise ValueError(f"attaching label {p!r} already in use")
    if rho == pair_stratum(rho.universe, j, jstar):
        raise ValueError("eta is undefined on the (j, jstar) two-point stratum itself")
    if pair <= rho.principal:
        return RootedPartition((rho.principal - pair) | {p}, rho.bubbles)
    bubble = _bubble_with(rho, pair)
    if bubble is None:
        raise ValueError("eta needs j and jstar together in one part")
    assert bubble != pair, "a bubble of two puncture labels carries no blown-up point"
    return RootedPartition(
        rho.principal, (rho.bubbles - {bubble}) | {(bubble - pair) | {p}}
    )


def forget_stratum(rho: RootedPartition, jstar: Label) -> RootedPartition:
    """Drop the puncture ``jstar`` from its part.

    A bubble reduced below two labels dissolves: its surviving label returns
    to the principal part.  The result may be the bubble-free sentinel,
    which is a value of the extended target, not a stratum.
    """
    if jstar.kind == "i":
        raise ValueError("only puncture-side labels can be forgotten")
    if jstar in rho.principal:
        return RootedPartition(rho.principal - {jstar}, rho.bubbles)
    bubble = next((b for b in rho.bubbles if jstar in b), None)
    if bubble is None:
        raise ValueError(f"{jstar!r} is not a label of this stratum")
    if len(bubble) > 2:
        return RootedPartition(
            rho.principal, (rho.bubbles - {bubble}) | {bubble - {jstar}}
        )
    survivor = next(iter(bubble - {jstar}))
    return RootedPartition(rho.principal | {survivor}, rho.bubbles - {bubble})


def fiber(rho_bar: RootedPartition, jstar: Label) -> set[RootedPartition]:
    """All strata that :func:`forget_stratum` sends to ``rho_bar``.

    The puncture can rejoin the principal part (the unique top element of
    the fiber), join any existing bubble, or form a fresh two-point bubble
    with any principal blown-up label; the latter group is pairwise
    incomparable in the degeneration order.
    """
    if jstar.kind == "i":
        raise ValueError("only puncture-side labels have forgetful fibers")
    if jstar in rho_bar.universe:
        raise ValueError(f"{jstar!r} already occurs in the stratum")
    if rho_bar.is_sentinel:
        raise ValueError(
            "the bubble-free value is not a stratum; its preimage is the set of"
            " (i, jstar) two-point strata"
        )
    out = {RootedPartition(rho_bar.principal | {jstar}, rho_bar.bubbles)}
    for bubble in rho_bar.bubbles:
        out.add(
            RootedPartition(
                rho_bar.principal, (rho_bar.bubbles - {bubble}) | {bubble | {jstar}}
            )
        )
    for label in rho_bar.principal:
        if label.kind == "i":
            out.add(
                RootedPartition(
                    rho_bar.principal - {label},
                    rho_bar.bubbles | {frozenset({label, jstar})},
                )
            )
    return out


def sentinel_fiber_count(I, J, jstar: Label) -> int:
    """How many strata of ``A1(I, J)`` forget to the bubble-free sentinel
    when ``jstar`` is dropped.

    Computed by brute force; the count always works out to ``|I|`` (one
    ``(i, jstar)`` two-point stratum per blown-up label), which is the same
    coefficient the string-type bracket reduction carries.
    """
    I, J = frozenset(I), frozenset(J)
    if jstar not in J:
        raise ValueError("jstar must belong to the puncture set")
    return sum(
        1 for rho in enumerate_A1_IJ(I, J) if forget_stratum(rho, jstar).is_sentinel
    )
