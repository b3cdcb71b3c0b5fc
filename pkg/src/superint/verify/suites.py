"""Default suites and the suite runner."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable

from ..model.params import ModelParams
from .checks import CheckReport, CheckSpec, run_check

SELECTORS = ("exact", "numeric", "commutators", "tridiagonal", "all")

# tolerances (relative): single order-2 applications vs. nested commutators
TOL_EIGEN = 1e-8
TOL_COMMUTATOR = 1e-6
NONZERO_THRESHOLD = 1e-3


@dataclass
class SuiteResult:
    reports: list
    summary: dict

    @property
    def ok(self) -> bool:
        return self.summary["ok"]

    def to_json(self) -> dict:
        return {"summary": self.summary, "reports": [r.to_json() for r in self.reports]}


def summarize(reports: Iterable[CheckReport]) -> dict:
    reports = list(reports)
    counts = {s: sum(1 for r in reports if r.status == s) for s in ("pass", "fail", "error")}
    return {"checks": len(reports), **counts, "ok": counts["fail"] == 0 and counts["error"] == 0}


def run_suite(specs: Iterable[CheckSpec], workers: int = 1) -> SuiteResult:
    """Run every spec; reports come back sorted by name whatever the scheduling."""
    specs = list(specs)
    names = [s.name for s in specs]
    if len(set(names)) != len(names):
        raise ValueError("check names in a suite must be unique")
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_check, specs))
    else:
        reports = [run_check(s) for s in specs]
    reports.sort(key=lambda r: r.name)
    return SuiteResult(reports, summarize(reports))


def _pairs_zero(params: ModelParams) -> list:
    """Commuting pairs that hold for any p (and the pure Coulomb extras)."""
    n = params.n
    pairs = [["H", "X"]]
    pairs += [["H", f"Z{l}"] for l in range(1, n - 1)]
    pairs += [["H", f"Y{p}"] for p in range(1, n)]
    pairs += [[f"Z{a}", f"Z{b}"] for a in range(1, n - 1) for b in range(a + 1, n - 1)]
    pairs += [[f"Y{a}", f"Y{b}"] for a in range(1, n) for b in range(a + 1, n)]
    pairs += [["Y1", f"Z{l}"] for l in range(1, n - 1)]
    pairs += [["X", f"Z{l}"] for l in range(1, n - 1)]
    if params.is_coulomb():
        pairs += [["H", f"L{i}{k}"] for i in range(1, n + 1) for k in range(i + 1, n + 1)]
        pairs += [["H", f"A{i}"] for i in range(1, n + 1)]
    return pairs


def _coulomb_identities(n: int) -> list:
    """[A_i, A_j] + 2 H L_ij = 0 for all i < j."""
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append({
                "label": f"[A{i},A{j}]+2HL{i}{j}",
                "terms": [["1", [f"A{i}", f"A{j}"]], ["-1", [f"A{j}", f"A{i}"]], ["2", ["H", f"L{i}{j}"]]],
            })
    return out


def commutator_specs(params: ModelParams, seed: int, jets: int = 10, tol: float | None = None) -> list:
    n = params.n
    tol = TOL_COMMUTATOR if tol is None else tol
    tag = f"n{n}"
    specs = [
        CheckSpec(f"commutator-zero/{tag}/[{a},{b}]", "commutator-zero", params,
                  {"pairs": [[a, b]], "jets": jets, "degree": 4}, tol, seed)
        for a, b in _pairs_zero(params)
    ]
    nonzero = []
    if n >= 3:
        nonzero.append(["Y1", "X"])
        nonzero.append(["Y2", "Z1"])
    for a, b in nonzero:
        specs.append(CheckSpec(f"commutator-nonzero/{tag}/[{a},{b}]", "commutator-nonzero", params,
                               {"pairs": [[a, b]], "jets": jets, "degree": 4}, NONZERO_THRESHOLD, seed))
    if params.is_coulomb() and n >= 2:
        specs.append(CheckSpec(f"commutator-identity/{tag}/runge-lenz", "commutator-identity", params,
                               {"identities": _coulomb_identities(n), "jets": jets, "degree": 4}, tol, seed))
    if n == 3 and params.is_coulomb():
        specs.append(CheckSpec("commutator-zero/n3/hydrogen-sets", "commutator-zero", params,
                               {"family": "hydrogen", "a": "2/3", "f": "5/7", "jets": 5, "degree": 4}, tol, seed))
    return specs


def default_suite(params: ModelParams, seed: int = 0, selector: str = "all",
                  tol_eigen: float | None = None, tol_commutator: float | None = None,
                  qmax: int = 3, points: int = 20) -> list:
    """Checks covering every model claim for one parameter set."""
    if selector not in SELECTORS:
        raise ValueError(f"unknown suite selector {selector!r}")
    n = params.n
    te = TOL_EIGEN if tol_eigen is None else tol_eigen
    want = (lambda s: True) if selector == "all" else (lambda s: s == selector)
    specs = []
    systems = ["spherical"] + (["parabolic"] if n >= 3 else [])
    if want("exact"):
        for system in systems:
            specs.append(CheckSpec(f"numeric-eigen/{system}/exact-points", "numeric-eigen", params,
                                   {"system": system, "frame": "curvilinear", "qmax": qmax,
                                    "points": 2, "mode": "exact"}, 0.0, seed))
            specs.append(CheckSpec(f"degeneracy/{system}", "degeneracy", params,
                                   {"system": system, "qmax": 6}, 0.0, seed))
        if n >= 3:
            specs.append(CheckSpec("exact-eigen/parabolic", "exact-eigen", params, {"qmax": 4}, 0.0, seed))
            specs.append(CheckSpec("generator-decomposition", "generator-decomposition", params,
                                   {"qmax": 2}, 0.0, seed))
            specs.append(CheckSpec("spectrum-set", "spectrum-set", params, {"qmax": 8}, 0.0, seed))
    if want("numeric"):
        for system in systems:
            for frame in ("curvilinear", "cartesian"):
                specs.append(CheckSpec(f"numeric-eigen/{system}/{frame}", "numeric-eigen", params,
                                       {"system": system, "frame": frame, "qmax": qmax,
                                        "points": points, "mode": "float"}, te, seed))
    if want("commutators"):
        specs += commutator_specs(params, seed, tol=tol_commutator)
    if want("tridiagonal") and n >= 3:
        specs.append(CheckSpec("tridiagonal/Y1", "tridiagonal", params,
                               {"Nmax": 4, "m_values": ["0", "1/2", "3"]}, 0.0, seed))
    return specs


def with_mutation(specs: Iterable[CheckSpec], mutation: str) -> list:
    return [replace(s, mutation=mutation) for s in specs]


def dumps(result: SuiteResult) -> str:
    """Canonical JSON text of a suite result (stable key order)."""
    return json.dumps(result.to_json(), indent=2)


def loads_reports(text: str) -> list:
    """Parse suite JSON back into reports, validating the schema."""
    data = json.loads(text)
    if set(data) != {"summary", "reports"}:
        raise ValueError("suite JSON must have exactly 'summary' and 'reports'")
    return [CheckReport.from_json(r) for r in data["reports"]]
