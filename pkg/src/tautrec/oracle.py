r"""Verification suites: independent reference computations checked against
the production evaluator and the strata model.

The reference bracket evaluator here deliberately shares none of the
production shortcuts: exponent tuples keep their positions (no sorting, no
multiplicity grouping), the psi-free point consumed by a string step is
drawn at random, and for classical genus-one integrals the string/dilaton
rule applied at each step is also drawn at random whenever both apply.
Exact agreement with the canonical evaluator over many seeded samples pins
down both the values and the order-independence of the reductions.

Each suite returns a :class:`VerificationReport` and accepts the functions
it exercises as keyword arguments, so a deliberately corrupted
implementation can be fed in to prove the suite is not vacuous.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .brackets import (
    MemoCache,
    corollary_closed_form,
    descending,
    eval_genus0_psi,
    eval_genus1_hodge,
    eval_genus1_psi,
    evaluate,
)
from .strata import (
    AUX_P,
    Label,
    RootedPartition,
    canonical_text,
    enumerate_A1_IJ,
    eta,
    fiber,
    forget_stratum,
    mu,
    pair_stratum,
    precedes,
    sentinel_fiber_count,
)

__all__ = [
    "VerificationReport",
    "labeled_bracket",
    "genus0_string",
    "random_key",
    "partitions_at_most",
    "verify_corollary",
    "verify_confluence",
    "verify_strata",
    "verify_bases",
]


@dataclass
class VerificationReport:
    """Outcome of one suite: case count, failures, and wall time.

    The suite is deterministic given its bounds and seed; ``millis`` is a
    measurement and is the one field allowed to vary between runs.
    """

    suite: str
    cases: int
    failures: list[dict] = field(default_factory=list)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "millis": self.millis,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


class _Run:
    """Case/failure accumulator for one suite."""

    def __init__(self, suite):
        self.suite = suite
        self.cases = 0
        self.failures = []
        self.started = time.perf_counter()

    def check(self, ok, source, expected, actual):
        self.cases += 1
        if not ok:
            self.failures.append(
                {"input": str(source), "expected": str(expected), "actual": str(actual)}
            )

    def equal(self, source, expected, actual):
        self.check(expected == actual, source, expected, actual)

    def report(self):
        millis = int((time.perf_counter() - self.started) * 1000)
        return VerificationReport(self.suite, self.cases, self.failures, millis)


# ---------------------------------------------------------------------------
# independent reference computations
# ---------------------------------------------------------------------------

def labeled_bracket(m, c_tilde, exps, rng, memo=None):
    """Per-point reference value of ``<c_tilde; exps>_{m, len(exps)}``.

    ``exps`` keeps its given order.  String steps consume a psi-free
    position chosen by ``rng``; for ``m = 0`` the string/dilaton rule is
    also chosen by ``rng`` whenever both apply.  ``memo`` maps the exact
    unsorted triple to its value; pass a shared dict to amortize repeated
    subproblems across samples.
    """
    exps = tuple(exps)
    if m < 0 or m + len(exps) == 0:
        raise ValueError("undefined moduli space")
    if memo is None:
        memo = {}
    return _labeled(m, c_tilde, exps, rng, memo)


def _labeled(m, ct, exps, rng, memo):
    if ct < 0 or any(c < 0 for c in exps):
        return Fraction(0)
    if ct + sum(exps) != m + len(exps):
        return Fraction(0)
    key = (m, ct, exps)
    if key in memo:
        return memo[key]
    n = len(exps)
    if m >= 1:
        if m == 1 and n == 0:
            value = Fraction(1, 24) if ct == 1 else Fraction(0)
        else:
            zeros = [k for k, c in enumerate(exps) if c == 0]
            if zeros:
                drop = rng.choice(zeros)
                rest = exps[:drop] + exps[drop + 1 :]
                value = m * _labeled(m, ct - 1, rest, rng, memo)
                for k, c in enumerate(rest):
                    if c >= 1:
                        value += _labeled(
                            m, ct, rest[:k] + (c - 1,) + rest[k + 1 :], rng, memo
                        )
            else:
                value = _labeled(m - 1, ct, exps + (0,), rng, memo)
    elif ct >= 2:
        value = Fraction(0)
    elif n == 1:
        value = Fraction(1, 24) if (ct, exps[0]) in ((0, 1), (1, 0)) else Fraction(0)
    else:
        zeros = [k for k, c in enumerate(exps) if c == 0]
        ones = [k for k, c in enumerate(exps) if c == 1]
        assert zeros or ones, "degree = dimension forces a 0 or a 1 exponent"
        use_string = bool(zeros) and (not ones or rng.random() < 0.5)
        if use_string:
            drop = rng.choice(zeros)
            rest = exps[:drop] + exps[drop + 1 :]
            value = Fraction(0)
            for k, c in enumerate(rest):
                if c >= 1:
                    value += _labeled(
                        0, ct, rest[:k] + (c - 1,) + rest[k + 1 :], rng, memo
                    )
        else:
            drop = rng.choice(ones)
            value = (n - 1) * _labeled(
                0, ct, exps[:drop] + exps[drop + 1 :], rng, memo
            )
    memo[key] = value
    return value


def genus0_string(exps) -> Fraction:
    """Genus-zero psi-intersection computed purely by string reduction down
    to the one-point space; the recursion route of the dual genus-zero
    check."""
    exps = descending(exps)
    if len(exps) < 3:
        raise ValueError("genus-zero moduli need at least three marked points")
    if exps[-1] < 0:
        return Fraction(0)
    return _genus0_string(exps)


@lru_cache(maxsize=None)
def _genus0_string(exps: tuple[int, ...]) -> Fraction:
    n = len(exps)
    if sum(exps) != n - 3:
        return Fraction(0)
    if n == 3:
        return Fraction(1)
    # below the degree gate at least three exponents vanish, so the last
    # entry of the descending tuple is a psi-free point
    rest = exps[:-1]
    total = Fraction(0)
    for k, c in enumerate(rest):
        if c >= 1:
            total += _genus0_string(descending(rest[:k] + (c - 1,) + rest[k + 1 :]))
    return total


def random_key(rng, max_dim):
    """Seeded random bracket data with degree equal to dimension.

    Samples ``m`` in [0, 5], ``n`` in [0, max_dim - m], a psitilde exponent,
    and a random composition of the leftover degree into the ``n`` slots;
    invalid shapes are rejection-sampled away.  The composition order is
    kept, so callers also exercise unsorted input.
    """
    while True:
        m = rng.randint(0, min(5, max_dim))
        n = rng.randint(0, max_dim - m)
        if m + n == 0:
            continue
        ct = rng.randint(0, m + n)
        spread = m + n - ct
        if n == 0:
            if spread:
                continue
            return m, ct, ()
        parts = [0] * n
        for _ in range(spread):
            parts[rng.randrange(n)] += 1
        return m, ct, tuple(parts)


def partitions_at_most(total: int, parts: int, cap: int | None = None):
    """Descending positive partitions of ``total`` into at most ``parts``
    parts (pad with zeros for fixed-length exponent tuples)."""
    if total == 0:
        yield ()
        return
    if parts == 0:
        return
    cap = total if cap is None else min(cap, total)
    for head in range(cap, 0, -1):
        for tail in partitions_at_most(total - head, parts - 1, head):
            yield (head,) + tail


def exponent_tuples(total: int, length: int):
    """All descending exponent tuples of ``length`` entries summing to
    ``total``."""
    for part in partitions_at_most(total, length):
        yield part + (0,) * (length - len(part))


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def verify_corollary(max_m: int, max_n: int, evaluator=None) -> VerificationReport:
    """Check the recursive evaluator against the closed form
    ``(1/24) m^n (m-1)!`` on every pure psitilde bracket with
    ``1 <= m <= max_m`` and ``0 <= n <= max_n``; exact equality."""
    if max_m < 1:
        raise ValueError("need max_m >= 1")
    run = _Run("corollary")
    if evaluator is None:
        cache = MemoCache()
        evaluator = lambda m, ct, exps: evaluate(m, ct, exps, cache)
    for m in range(1, max_m + 1):
        for n in range(0, max_n + 1):
            expected = corollary_closed_form(m, n)
            actual = evaluator(m, m + n, [0] * n)
            run.equal(f"<{m + n};{[0] * n}>_({m},{n})", expected, actual)
    return run.report()


def verify_confluence(samples: int, seed: int, max_dim: int, evaluator=None) -> VerificationReport:
    """Compare the canonical grouped evaluator against the randomized
    per-point reference on seeded random keys with dim <= max_dim.

    Inputs reach the reference side shuffled, so one run exercises exponent
    symmetry, free choice of the psi-free point, and free string/dilaton
    ordering at once; equality is exact, with no tolerance.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    run = _Run("confluence")
    rng = random.Random(seed)
    if evaluator is None:
        cache = MemoCache()
        evaluator = lambda m, ct, exps: evaluate(m, ct, exps, cache)
    memo = {}
    for _ in range(samples):
        m, ct, exps = random_key(rng, max_dim)
        shuffled = list(exps)
        rng.shuffle(shuffled)
        expected = labeled_bracket(m, ct, tuple(shuffled), rng, memo)
        actual = evaluator(m, ct, exps)
        run.equal(f"<{ct};{list(exps)}>_({m},{len(exps)})", expected, actual)
    return run.report()


def verify_strata(max_size: int, mu_map=mu, eta_map=eta, forget=forget_stratum) -> VerificationReport:
    """Exhaustive structural checks over every split of up to ``max_size``
    labels into blown-up and puncture sets.

    Covers: emptiness for an empty blown-up set, uniqueness of the minimal
    stratum, both structural maps being order isomorphisms onto their
    enumerated targets, the fibers of the forgetful map partitioning the
    strata with the expected shape and maximal element, order compatibility
    of the forgetful map, and the sentinel fiber count.
    """
    if max_size < 2:
        raise ValueError("need universes of at least two labels")
    run = _Run("strata")
    for total in range(2, max_size + 1):
        for num_i in range(0, total + 1):
            I = frozenset(Label("i", k) for k in range(num_i))
            J = frozenset(Label("j", k) for k in range(total - num_i))
            strata = enumerate_A1_IJ(I, J)
            tag = f"|I|={num_i},|J|={total - num_i}"
            if not I:
                run.check(not strata, f"{tag} empty", "no strata", f"{len(strata)} strata")
                continue

            rho_min = RootedPartition(frozenset(), frozenset({I | J}))
            minimal = [
                r for r in strata if not any(precedes(o, r) for o in strata if o != r)
            ]
            run.check(
                minimal == [rho_min],
                f"{tag} unique minimal",
                canonical_text(rho_min),
                [canonical_text(r) for r in minimal],
            )

            for i in sorted(I, key=Label.sort_key):
                for j in sorted(J, key=Label.sort_key):
                    top = pair_stratum(I | J, i, j)
                    domain = sorted(
                        (r for r in strata if precedes(r, top)), key=canonical_text
                    )
                    image = [mu_map(r, i, j) for r in domain]
                    target = enumerate_A1_IJ((I - {i}) | {AUX_P}, J - {j})
                    run.check(
                        len(set(image)) == len(image) and set(image) == target,
                        f"{tag} mu({i},{j}) bijection",
                        f"{len(target)} strata",
                        f"{len(set(image))} images of {len(domain)}",
                    )
                    mismatches = sum(
                        1
                        for a in domain
                        for b in domain
                        if precedes(a, b)
                        != precedes(mu_map(a, i, j), mu_map(b, i, j))
                    )
                    run.check(
                        mismatches == 0,
                        f"{tag} mu({i},{j}) order isomorphism",
                        0,
                        mismatches,
                    )

            for j in sorted(J, key=Label.sort_key):
                for jstar in sorted(J - {j}, key=Label.sort_key):
                    twopoint = pair_stratum(I | J, j, jstar)
                    domain = sorted(
                        (
                            r
                            for r in strata
                            if r != twopoint
                            and (
                                {j, jstar} <= r.principal
                                or any({j, jstar} <= b for b in r.bubbles)
                            )
                        ),
                        key=canonical_text,
                    )
                    image = [eta_map(r, j, jstar) for r in domain]
                    target = enumerate_A1_IJ(I, (J - {j, jstar}) | {AUX_P})
                    run.check(
                        len(set(image)) == len(image) and set(image) == target,
                        f"{tag} eta({j},{jstar}) bijection",
                        f"{len(target)} strata",
                        f"{len(set(image))} images of {len(domain)}",
                    )
                    mismatches = sum(
                        1
                        for a in domain
                        for b in domain
                        if precedes(a, b)
                        != precedes(eta_map(a, j, jstar), eta_map(b, j, jstar))
                    )
                    run.check(
                        mismatches == 0,
                        f"{tag} eta({j},{jstar}) order isomorphism",
                        0,
                        mismatches,
                    )

            for jstar in sorted(J, key=Label.sort_key):
                reduced = enumerate_A1_IJ(I, J - {jstar})
                covered: set[RootedPartition] = set()
                fibers_ok = True
                shape_ok = True
                top_ok = True
                spread_ok = True
                for rho_bar in reduced:
                    fib = fiber(rho_bar, jstar)
                    preimage = {r for r in strata if forget(r, jstar) == rho_bar}
                    fibers_ok &= fib == preimage
                    wanted = (
                        1
                        + len(rho_bar.bubbles)
                        + sum(1 for x in rho_bar.principal if x.kind == "i")
                    )
                    shape_ok &= len(fib) == wanted
                    top = RootedPartition(
                        rho_bar.principal | {jstar}, rho_bar.bubbles
                    )
                    top_ok &= top in fib and all(
                        precedes(r, top) for r in fib if r != top
                    )
                    rest = [r for r in fib if r != top]
                    spread_ok &= not any(
                        precedes(a, b) for a in rest for b in rest if a != b
                    )
                    covered |= fib
                run.check(fibers_ok, f"{tag} fiber({jstar}) = preimage", True, fibers_ok)
                run.check(shape_ok, f"{tag} fiber({jstar}) shape", True, shape_ok)
                run.check(top_ok, f"{tag} fiber({jstar}) top element", True, top_ok)
                run.check(
                    spread_ok, f"{tag} fiber({jstar}) incomparable rest", True, spread_ok
                )

                to_sentinel = {r for r in strata if forget(r, jstar).is_sentinel}
                run.check(
                    covered.isdisjoint(to_sentinel)
                    and covered | to_sentinel == strata,
                    f"{tag} fibers partition ({jstar})",
                    len(strata),
                    f"{len(covered)}+{len(to_sentinel)}",
                )
                run.equal(
                    f"{tag} sentinel count ({jstar})", len(I), len(to_sentinel)
                )
                run.equal(
                    f"{tag} sentinel_fiber_count ({jstar})",
                    len(I),
                    sentinel_fiber_count(I, J, jstar),
                )

                drops = 0
                for r1 in strata:
                    for r2 in strata:
                        if precedes(r1, r2):
                            b1, b2 = forget(r1, jstar), forget(r2, jstar)
                            if b1 != b2 and not precedes(b1, b2):
                                drops += 1
                run.check(
                    drops == 0, f"{tag} forgetful order compatibility ({jstar})", 0, drops
                )
    return run.report()


def verify_bases(limit: int, genus0=eval_genus0_psi, genus1=eval_genus1_psi, hodge=eval_genus1_hodge) -> VerificationReport:
    """Base-case checks: genus-zero closed form against the pure string
    recursion on every tuple with at most ``limit`` points, the genus-one
    all-ones chain ``(n-1)!/24``, and spot checks that a squared Hodge
    class kills the integral."""
    if limit < 3:
        raise ValueError("need at least the three-point genus-zero space")
    run = _Run("bases")
    for n in range(3, limit + 1):
        for exps in exponent_tuples(n - 3, n):
            run.equal(f"genus0 {list(exps)}", genus0_string(exps), genus0(exps))
    for n in range(1, limit + 1):
        run.equal(
            f"genus1 tau_1^{n}", Fraction(factorial(n - 1), 24), genus1([1] * n)
        )
    rng = random.Random(0x5EED)
    for _ in range(10):
        n = rng.randint(2, max(limit, 2))
        exps = [0] * n
        for _ in range(n - 2):
            exps[rng.randrange(n)] += 1
        run.equal(f"lambda^2 {exps}", Fraction(0), hodge(2, exps))
    return run.report()
