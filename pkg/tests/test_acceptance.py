"""Acceptance criteria 1-8, one pass/fail line per criterion.

Run under pytest (the lines are repeated in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction as F

import pytest

from superint.model import ModelParams
from superint.verify import CheckSpec, default_suite, run_check, run_suite, with_mutation

RESULTS: dict[int, str] = {}

P_FAMILIES = {
    "zero": [F(0)] * 5,
    "unit-fractions": [F(1, 2), F(1, 3), F(1, 4), F(1, 5), F(1, 6)],
    "integers": [F(2), F(3), F(4), F(5), F(6)],
}
M_VALUES = ["0", "1/2", "1", "3/2", "2", "3", "1/3", "5/2", "-1/3", "7/4"]


def _params(n, gamma, family):
    return ModelParams.make(n, gamma, P_FAMILIES[family][: n - 1])


def _record(number: int, reports: list, extra: str = "") -> bool:
    bad = [r for r in reports if r.status != "pass"]
    worst = max((float(r.worst_residual) for r in reports if r.kind != "commutator-nonzero"), default=0.0)
    line = (f"criterion {number}: {'PASS' if not bad else 'FAIL'} "
            f"({len(reports)} checks, worst residual {worst:.3g}{extra})")
    if bad:
        line += "; first failure " + bad[0].name + " " + str(bad[0].witness)
    RESULTS[number] = line
    print(line)
    return not bad


def criterion_1() -> bool:
    reports = []
    for n in (3, 4, 5, 6):
        for gamma in (F(1), F(3, 2)):
            for fam in P_FAMILIES:
                P = _params(n, gamma, fam)
                reports.append(run_check(CheckSpec(f"exact-eigen/n{n}/g{gamma}/{fam}", "exact-eigen",
                                                   P, {"qmax": 6}, 0.0, 0)))
    return _record(1, reports)


def criterion_2() -> bool:
    reports = []
    for n in (3, 4):
        P = _params(n, F(1), "zero")
        reports.append(run_check(CheckSpec(f"tridiagonal/n{n}", "tridiagonal", P,
                                           {"Nmax": 6, "m_values": M_VALUES}, 0.0, 0)))
    return _record(2, reports)


def criterion_3() -> bool:
    reports = []
    for n in (3, 4, 5):
        P = _params(n, F(1), "unit-fractions")
        for system in ("parabolic", "spherical"):
            for frame in ("curvilinear", "cartesian"):
                for mode, points, tol in (("float", 20, 1e-8), ("exact", 2, 0.0)):
                    scope = {"system": system, "frame": frame, "qmax": 4, "points": points, "mode": mode}
                    name = f"numeric-eigen/n{n}/{system}/{frame}/{mode}"
                    reports.append(run_check(CheckSpec(name, "numeric-eigen", P, scope, tol, 31)))
    return _record(3, reports)


def criterion_4() -> bool:
    from superint.verify import commutator_specs

    reports = []
    for n in (3, 4, 5):
        for fam in ("zero", "unit-fractions"):
            P = _params(n, F(1), fam)
            specs = [s for s in commutator_specs(P, 11) if "hydrogen" not in s.name]
            reports += [run_check(s) for s in specs]
    names = {r.name for r in reports}
    have_identity = any("runge-lenz" in x for x in names)
    have_nonzero = all(any(f"[{p}]" in x for x in names) for p in ("Y1,X", "Y2,Z1"))
    ok = _record(4, reports)
    return ok and have_identity and have_nonzero


def criterion_5() -> bool:
    reports = []
    for n in (3, 4):
        for fam in P_FAMILIES:
            P = _params(n, F(1), fam)
            reports.append(run_check(CheckSpec(f"spectrum-set/n{n}/{fam}", "spectrum-set", P,
                                               {"qmax": 8}, 0.0, 0)))
    return _record(5, reports)


def criterion_6() -> bool:
    P = _params(3, F(1), "zero")
    reports = []
    for a in ("1", "2/3"):
        for f in ("1", "5/7"):
            scope = {"family": "hydrogen", "a": a, "f": f, "jets": 5, "degree": 4}
            reports.append(run_check(CheckSpec(f"hydrogen-sets/a{a}/f{f}", "commutator-zero", P,
                                               scope, 1e-6, 5)))
    return _record(6, reports)


def criterion_7() -> bool:
    reports = []
    for n in (3, 4, 5):
        for fam in P_FAMILIES:
            P = _params(n, F(3, 2), fam)
            reports.append(run_check(CheckSpec(f"generator-decomposition/n{n}/{fam}",
                                               "generator-decomposition", P, {"qmax": 2}, 0.0, 0)))
    return _record(7, reports)


def criterion_8() -> bool:
    P = _params(3, F(1), "unit-fractions")
    base = default_suite(P, seed=42)
    caught = {}
    for mutation in ("coulomb_sign", "y1_coefficient"):
        result = run_suite(with_mutation(base, mutation))
        caught[mutation] = [r.name for r in result.reports if r.status == "fail"]
    ok = all(caught.values())
    line = f"criterion 8: {'PASS' if ok else 'FAIL'} (" + ", ".join(
        f"{m} caught by {len(v)} checks" for m, v in caught.items()) + ")"
    RESULTS[8] = line
    print(line)
    return ok


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    t0 = time.time()
    outcomes = [c() for c in CRITERIA]
    print(f"{sum(outcomes)}/{len(outcomes)} criteria pass in {time.time() - t0:.1f} s")
    sys.exit(0 if all(outcomes) else 1)
