r"""Exact bracket evaluation on genus-one moduli spaces and their blowups.

A bracket ``<ct; (c_1, ..., c_n)>_{m,n}`` is the top intersection number of
the universal psi-class power ``psitilde^ct`` with the pulled-back monomial
``prod_j psi_j^{c_j}`` on the space obtained from the moduli space of
genus-one stable curves with ``m + n`` marked points by blowing up, in a
degeneration-compatible order, the boundary strata whose every bubble
carries one of the first ``m`` points.  For ``m = 0`` nothing is blown up
and ``psitilde`` is the Hodge class ``lambda``, so the bracket is the
classical integral ``<lambda^ct prod psi^{c_j}, Mbar_{1,n}>``.

All arithmetic is exact: values are `fractions.Fraction`, never floats.

Evaluation strategy
-------------------

* ``m = 0``: genus-one string/dilaton reduction with ``lambda`` riding along
  as a spectator.  ``lambda`` is pulled back from the one-dimensional
  ``Mbar_{1,1}``, so ``lambda^2 = 0`` and the dilaton factor is ``n - 1``.
* ``m >= 1``, some exponent zero: :func:`string_step`, the string-type
  reduction that besides the usual per-point terms contributes the extra
  term ``m * <ct - 1; ...>_{m, n-1}``.
* ``m >= 1``, all exponents positive: :func:`transfer_step`, which moves one
  blown-up point into the psi-carrying set with exponent ``0`` and leaves
  the value unchanged.
* terminal: ``<1; ->_{1,0} = 1/24``, normalized by ``<psi, Mbar_{1,1}> = 1/24``.

A bracket vanishes identically unless its total degree ``ct + sum(c_j)``
equals the dimension ``m + n`` of the underlying space; :func:`canonical_key`
applies this gate, together with the negative-exponent conventions, and
returns the :data:`ZERO` sentinel for inputs that are zero by fiat.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

__all__ = [
    "Rational",
    "ZERO",
    "ZeroSentinel",
    "BracketKey",
    "MemoCache",
    "descending",
    "canonical_key",
    "eval_bracket",
    "evaluate",
    "string_step",
    "transfer_step",
    "eval_genus1_hodge",
    "eval_genus1_psi",
    "eval_genus0_psi",
    "corollary_closed_form",
]

#: Exact rational scalars.  `fractions.Fraction` keeps values reduced with a
#: positive denominator, which is exactly the invariant the evaluator needs.
Rational = Fraction


class ZeroSentinel:
    """Stand-in key for a bracket that is zero by convention (negative
    exponent or degree different from dimension).  Single instance: ZERO."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"


ZERO = ZeroSentinel()


def descending(exps) -> tuple[int, ...]:
    """Canonical form of an exponent multiset: a descending-sorted tuple."""
    return tuple(sorted(exps, reverse=True))


@dataclass(frozen=True)
class BracketKey:
    """Canonical name ``<c_tilde; exps>_(m, len(exps))`` of a bracket.

    ``m`` counts the blown-up marked points, ``exps`` the psi-exponents of
    the remaining points as a descending tuple.  Keys are pure identifiers;
    the vanishing gate lives in :func:`canonical_key`.
    """

    m: int
    c_tilde: int
    exps: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("the number of blown-up points must be nonnegative")
        if self.m + len(self.exps) == 0:
            raise ValueError("a genus-one moduli space needs at least one marked point")
        if self.c_tilde < 0 or any(c < 0 for c in self.exps):
            raise ValueError("negative exponents vanish by fiat; use canonical_key")
        if self.exps != descending(self.exps):
            raise ValueError("exponents must be sorted descending; use canonical_key")

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return self.c_tilde + sum(self.exps)

    @property
    def dim(self) -> int:
        return self.m + len(self.exps)

    def __repr__(self):
        return f"<{self.c_tilde};{list(self.exps)}>_({self.m},{self.n})"


def canonical_key(m: int, c_tilde: int, exps) -> BracketKey | ZeroSentinel:
    """Sort ``exps`` and gate the input; return :data:`ZERO` when the bracket
    vanishes identically.

    Vanishing happens for a negative ``c_tilde``, a negative exponent, or a
    total degree different from the dimension ``m + len(exps)``.  A space
    with no marked points at all is rejected outright, not treated as zero.
    """
    if m < 0:
        raise ValueError("the number of blown-up points must be nonnegative")
    exps = descending(exps)
    if m + len(exps) == 0:
        raise ValueError("a genus-one moduli space needs at least one marked point")
    if c_tilde < 0 or (exps and exps[-1] < 0):
        return ZERO
    if c_tilde + sum(exps) != m + len(exps):
        return ZERO
    return BracketKey(m, c_tilde, exps)


class MemoCache:
    """Write-once table from canonical keys to exact values.

    Lookups and insertions are single dict operations, hence atomic under
    the GIL; concurrent evaluations may compute a key twice, which is
    harmless because every write for a key carries the same value.  A write
    disagreeing with the stored value raises.
    """

    def __init__(self):
        self._table: dict[BracketKey, Fraction] = {}

    def get(self, key: BracketKey) -> Fraction | None:
        return self._table.get(key)

    def put(self, key: BracketKey, value: Fraction) -> Fraction:
        held = self._table.setdefault(key, value)
        if held != value:
            raise ValueError(f"cache holds {held} for {key}, refusing {value}")
        return held

    def __contains__(self, key) -> bool:
        return key in self._table

    def __len__(self) -> int:
        return len(self._table)

    def items(self):
        return self._table.items()


def string_step(key: BracketKey) -> list[tuple[int, BracketKey | ZeroSentinel]]:
    """Expand one string-type reduction at a psi-free point.

    Requires some exponent to be zero and at least two points overall.  The
    psi-free point consumed is the last entry of the descending tuple; all
    psi-free points are interchangeable, so the choice does not affect the
    value.  Returns ``(coefficient, key)`` terms: first the transfer of one
    psitilde power, with coefficient ``m``, then one term per distinct
    positive exponent value with its multiplicity as coefficient.  Terms
    whose key is :data:`ZERO` contribute nothing.
    """
    m, ct, exps = key.m, key.c_tilde, key.exps
    assert exps and exps[-1] == 0, "string step needs a psi-free point"
    assert m + len(exps) >= 2, "string step needs at least two points"
    rest = exps[:-1]
    # mechanical rewrite: children keep the input's degree-minus-dimension
    # offset, so only a negative psitilde power produces the zero sentinel
    terms: list[tuple[int, BracketKey | ZeroSentinel]] = [
        (m, ZERO if ct == 0 else BracketKey(m, ct - 1, rest))
    ]
    for i, c in enumerate(rest):
        if c == 0:
            break
        if i and rest[i - 1] == c:
            continue
        lowered = descending(rest[:i] + (c - 1,) + rest[i + 1 :])
        terms.append((rest.count(c), BracketKey(m, ct, lowered)))
    return terms


def transfer_step(key: BracketKey) -> BracketKey:
    """Move one blown-up point over to the psi-carrying set.

    Requires ``m >= 1``, every exponent positive, and at least two points
    overall.  The moved point carries no psi factor, so it enters the
    exponent tuple as an explicit ``0``; degree and dimension are both
    preserved and the bracket value is unchanged.
    """
    m, ct, exps = key.m, key.c_tilde, key.exps
    assert m >= 1, "transfer step needs a blown-up point to move"
    assert m + len(exps) >= 2, "transfer step needs at least two points"
    assert not exps or exps[-1] >= 1, "transfer step needs all exponents positive"
    return BracketKey(m - 1, ct, exps + (0,))


def eval_bracket(key: BracketKey, cache: MemoCache | None = None) -> Fraction:
    """Exact value of the bracket named by a canonical ``key``.

    Every key reached along the way is memoized in ``cache`` (a fresh cache
    is used when none is given; passing one only speeds things up).
    """
    if isinstance(key, ZeroSentinel):
        raise ValueError("ZERO is not evaluatable; its value is 0 by convention")
    if cache is None:
        cache = MemoCache()
    return _eval(key, cache)


def _eval(key: BracketKey, cache: MemoCache) -> Fraction:
    held = cache.get(key)
    if held is not None:
        return held
    m, exps = key.m, key.exps
    if m == 0:
        value = eval_genus1_hodge(key.c_tilde, exps)
    elif m == 1 and not exps:
        value = Fraction(1, 24) if key.c_tilde == 1 else Fraction(0)
    elif exps and exps[-1] == 0:
        value = Fraction(0)
        for coeff, term in string_step(key):
            if coeff and not isinstance(term, ZeroSentinel):
                value += coeff * _eval(term, cache)
    else:
        value = _eval(transfer_step(key), cache)
    return cache.put(key, value)


def evaluate(m: int, c_tilde: int, exps, cache: MemoCache | None = None) -> Fraction:
    """Canonicalize and evaluate; inputs gated to zero give ``Fraction(0)``."""
    key = canonical_key(m, c_tilde, exps)
    if isinstance(key, ZeroSentinel):
        return Fraction(0)
    return eval_bracket(key, cache)


def eval_genus1_hodge(lambda_pow: int, exps) -> Fraction:
    """Hodge-psi integral ``<lambda^a prod_j psi_j^{c_j}, Mbar_{1,n}>``.

    Zero when ``a >= 2`` (``lambda`` is pulled back from the one-dimensional
    ``Mbar_{1,1}``) or when ``a + sum(c_j) != n``.  For ``n = 1`` the two
    degree-one integrals both equal ``1/24``; for ``n >= 2`` a psi-free
    point is removed by the string rule, else every exponent is forced to
    equal one and a dilaton step applies with factor ``n - 1``.
    """
    exps = descending(exps)
    if not exps:
        raise ValueError("Mbar_{1,0} does not exist")
    return _hodge(lambda_pow, exps)


@lru_cache(maxsize=None)
def _hodge(a: int, exps: tuple[int, ...]) -> Fraction:
    n = len(exps)
    if a < 0 or exps[-1] < 0:
        return Fraction(0)
    if a >= 2:
        return Fraction(0)
    if a + sum(exps) != n:
        return Fraction(0)
    if n == 1:
        return Fraction(1, 24) if (a, exps[0]) in ((0, 1), (1, 0)) else Fraction(0)
    if exps[-1] == 0:
        # string: drop the psi-free point; lambda is a pullback, no extra term
        rest = exps[:-1]
        value = Fraction(0)
        for i, c in enumerate(rest):
            if c == 0:
                break
            if i and rest[i - 1] == c:
                continue
            lowered = descending(rest[:i] + (c - 1,) + rest[i + 1 :])
            value += rest.count(c) * _hodge(a, lowered)
        return value
    # no psi-free point: degree = dimension forces every exponent to be 1
    assert exps[0] == 1, "an exponent >= 2 here would contradict degree = dimension"
    return (n - 1) * _hodge(a, exps[:-1])


def eval_genus1_psi(exps) -> Fraction:
    """Genus-one psi-intersection ``<prod_j psi_j^{c_j}, Mbar_{1,n}>``."""
    return eval_genus1_hodge(0, exps)


def eval_genus0_psi(exps) -> Fraction:
    """Genus-zero psi-intersection ``<prod_j psi_j^{c_j}, Mbar_{0,n}>``.

    Closed form ``(n-3)! / prod_j c_j!`` when the exponents sum to ``n - 3``,
    zero otherwise.  The same numbers fall out of the pure string recursion
    ending at the one-point space ``Mbar_{0,3}``; the verification suites
    check both routes against each other.
    """
    exps = descending(exps)
    n = len(exps)
    if n < 3:
        raise ValueError("genus-zero moduli need at least three marked points")
    if exps[-1] < 0 or sum(exps) != n - 3:
        return Fraction(0)
    denom = 1
    for c in exps:
        denom *= factorial(c)
    return Fraction(factorial(n - 3), denom)


def corollary_closed_form(m: int, n: int) -> Fraction:
    """Closed form ``(1/24) * m**n * (m-1)!`` for the pure psitilde bracket
    ``<m + n; (0, ..., 0)>_{m,n}`` with ``m >= 1``."""
    if m < 1:
        raise ValueError("the closed form needs at least one blown-up point")
    return Fraction(m**n * factorial(m - 1), 24)
