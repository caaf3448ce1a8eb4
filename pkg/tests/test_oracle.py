"""Tests of the verification suites themselves: they pass on the real
implementations, fail on corrupted ones, and report deterministically."""

import json
import random
from fractions import Fraction

import pytest

from tautrec.brackets import eval_genus0_psi, eval_genus1_hodge, eval_genus1_psi, evaluate
from tautrec.oracle import (
    VerificationReport,
    genus0_string,
    labeled_bracket,
    random_key,
    verify_bases,
    verify_confluence,
    verify_corollary,
    verify_strata,
)
from tautrec.strata import forget_stratum, mu


def essence(report):
    return (report.suite, report.cases, report.failures)


def test_verify_corollary_passes():
    report = verify_corollary(6, 6)
    assert report.passed and report.cases == 42


def test_verify_corollary_bounds():
    with pytest.raises(ValueError):
        verify_corollary(0, 3)


def test_verify_corollary_catches_a_corrupted_evaluator():
    skewed = lambda m, ct, exps: evaluate(m, ct, exps) + Fraction(1, 24)
    report = verify_corollary(3, 3, evaluator=skewed)
    assert not report.passed and len(report.failures) == report.cases
    failure = report.failures[0]
    assert set(failure) == {"input", "expected", "actual"}


def test_verify_confluence_passes_and_is_reproducible():
    first = verify_confluence(120, 7, 9)
    second = verify_confluence(120, 7, 9)
    assert first.passed and first.cases == 120
    assert essence(first) == essence(second)


def test_verify_confluence_catches_a_corrupted_evaluator():
    skewed = lambda m, ct, exps: -evaluate(m, ct, exps) - 1
    report = verify_confluence(30, 11, 8, evaluator=skewed)
    assert not report.passed


def test_verify_strata_passes():
    report = verify_strata(4)
    assert report.passed and report.cases > 0


def test_verify_strata_catches_corrupted_maps():
    # identity maps are well-typed but land in the wrong stratum sets
    report = verify_strata(4, forget=lambda rho, jstar: rho)
    assert not report.passed
    report = verify_strata(4, mu_map=lambda rho, i, j: rho)
    assert not report.passed
    report = verify_strata(4, eta_map=lambda rho, j, jstar: rho)
    assert not report.passed


def test_verify_bases_passes():
    report = verify_bases(8)
    assert report.passed


def test_verify_bases_catches_corruption():
    report = verify_bases(6, genus0=lambda exps: eval_genus0_psi(exps) + 1)
    assert not report.passed
    report = verify_bases(6, genus1=lambda exps: eval_genus1_psi(exps) * 2 + 1)
    assert not report.passed
    report = verify_bases(6, hodge=lambda a, exps: eval_genus1_hodge(a, exps) + Fraction(1, 3))
    assert not report.passed


def test_report_serialization_schema():
    report = verify_corollary(2, 2)
    data = json.loads(report.to_json())
    assert set(data) == {"suite", "cases", "failures", "millis"}
    assert data["suite"] == "corollary" and data["cases"] == 6
    assert data["failures"] == [] and isinstance(data["millis"], int)
    rebuilt = VerificationReport(**data)
    assert essence(rebuilt) == essence(report)


def test_labeled_bracket_matches_known_values_under_any_seed():
    for seed in (0, 1, 2, 3, 4):
        rng = random.Random(seed)
        assert labeled_bracket(2, 2, (1,), rng) == Fraction(1, 12)
        # degree 2 != dim 3: zero either way the rules are ordered
        assert labeled_bracket(0, 0, (1, 1, 0), rng) == 0
        assert labeled_bracket(3, 5, (0, 0), rng) == Fraction(3, 4)
        # admits both a string and a dilaton step; 1/24 under either
        assert labeled_bracket(0, 1, (1, 0), rng) == Fraction(1, 24)


def test_labeled_bracket_rejects_undefined_space():
    with pytest.raises(ValueError):
        labeled_bracket(0, 0, (), random.Random(0))


def test_genus0_string_small_values():
    assert genus0_string([0, 0, 0]) == 1
    assert genus0_string([1, 0, 0, 0]) == 1
    assert genus0_string([1, 1, 0, 0, 0]) == 2
    assert genus0_string([2, 0, 0, 0, 0]) == 1
    assert genus0_string([1, 1, 1]) == 0
    with pytest.raises(ValueError):
        genus0_string([0])


def test_random_key_respects_the_gate_and_bounds():
    rng = random.Random(5)
    for _ in range(300):
        m, ct, exps = random_key(rng, 9)
        assert 0 <= m <= 5 and m + len(exps) <= 9 and m + len(exps) >= 1
        assert ct + sum(exps) == m + len(exps)
        assert ct >= 0 and all(c >= 0 for c in exps)
