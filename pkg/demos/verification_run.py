#!/usr/bin/env python3
"""Run all four verification suites at their standard bounds and print the
reports.

The suites re-derive everything independently: the closed form against the
recursion, a randomized per-point evaluator against the grouped one, the
strata structure by exhaustive brute force, and the classical base cases
along both of their routes.

    python demos/verification_run.py
"""

import sys

from tautrec import (
    verify_bases,
    verify_confluence,
    verify_corollary,
    verify_strata,
)

reports = [
    verify_corollary(6, 6),
    verify_confluence(200, 42, 10),
    verify_strata(6),
    verify_bases(8),
]

failed = 0
for report in reports:
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}  {report.suite:<12} {report.cases:>5} cases  {report.millis:>6} ms")
    for failure in report.failures:
        failed += 1
        print(f"      {failure['input']}: expected {failure['expected']}, got {failure['actual']}")

print()
print("all suites passed" if not failed else f"{failed} failing cases")
sys.exit(0 if not failed else 1)
