"""Acceptance criteria, one verification suite each.

Every test records a single pass/fail line with the worst observed value.
The lines are printed together in the terminal summary of every run.
"""

import pytest

from ps12.verify import SUITES

from conftest import ACCEPTANCE_LINES

CRITERIA = [
    (1, "oracle", "oracle equivalence, exact and float"),
    (2, "marsden", "Marsden identity and dual recurrence"),
    (3, "exchange", "exchange identities"),
    (4, "kappa", "exact condition numbers"),
    (5, "qi", "quasi-interpolant reproduction and tables"),
    (6, "derivatives", "derivatives vs finite differences, restriction table"),
    (7, "joins", "C2 joins and perturbation detection"),
    (8, "enumeration", "enumeration of simplex-spline classes"),
    (9, "supports", "support counts per subtriangle"),
    (10, "partition", "partition of unity and positivity"),
    (11, "stability", "stability sandwich and control-point gap"),
]

RUNTIME_LIMIT = {"oracle": 120.0}


@pytest.mark.parametrize("number,suite,title", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, suite, title):
    report = SUITES[suite](seed=0)
    ok = report.passed and report.runtime < RUNTIME_LIMIT.get(suite, float("inf"))
    line = f"criterion {number:2d} ({title}): {'PASS' if ok else 'FAIL'} | {report.line()}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert report.passed, report.line()
    if suite in RUNTIME_LIMIT:
        assert report.runtime < RUNTIME_LIMIT[suite]
