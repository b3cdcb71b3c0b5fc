import json
import os
from fractions import Fraction as F
from pathlib import Path

import pytest

from superint.model import ModelParams
from superint.verify import (MUTATIONS, CheckReport, CheckSpec, SplitMix64, default_suite, dumps,
                             loads_reports, run_check, run_suite, with_mutation)

GOLDEN = Path(__file__).parent / "golden" / "exact_suite_n3.json"
P3 = ModelParams.make(3, 1, [F(1, 2), 3])
COULOMB3 = ModelParams.make(3, 1, [0, 0])


def test_rng_streams():
    a, b = SplitMix64(42, "points"), SplitMix64(42, "points")
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    c = SplitMix64(42, "jets")
    assert SplitMix64(42, "points").next_u64() != c.next_u64()
    assert SplitMix64(42).split("x").label == "x"
    r = SplitMix64(7, "u")
    assert all(0 <= r.random() < 1 for _ in range(100))
    assert all(2 <= r.randint(2, 4) <= 4 for _ in range(100))


def test_rng_reference_values():
    from superint.verify.rng import GOLDEN, mix64

    # first two outputs of the reference SplitMix64 seeded with 0
    assert mix64(GOLDEN) == 0xE220A8397B1DCDAF
    assert mix64(2 * GOLDEN) == 0x6E789E6AA1B965F4
    r = SplitMix64(42, "points")
    assert [r.next_u64() for _ in range(3)] == [5014963425770824012, 11564562909064159308, 2692313866129921447]


def test_exact_eigen_example():
    r = run_check(CheckSpec("e", "exact-eigen", COULOMB3, {"qmax": 4}, 0.0, 0))
    assert (r.status, r.worst_residual) == ("pass", "0")


def test_runge_lenz_identity_example():
    ident = {"label": "[A1,A2]+2HL12",
             "terms": [["1", ["A1", "A2"]], ["-1", ["A2", "A1"]], ["2", ["H", "L12"]]]}
    r = run_check(CheckSpec("i", "commutator-identity", COULOMB3,
                            {"identities": [ident], "jets": 10, "degree": 4}, 1e-8, 3))
    assert r.status == "pass" and r.worst_residual <= 1e-8


def test_nonzero_commutator_example():
    r = run_check(CheckSpec("nz", "commutator-nonzero", P3,
                            {"pairs": [["Y2", "Z1"]], "jets": 10, "degree": 4}, 1e-3, 3))
    assert r.status == "pass" and r.worst_residual >= 1e-3


def test_wrong_identity_fails():
    ident = {"label": "bad", "terms": [["1", ["A1", "A2"]], ["-1", ["A2", "A1"]], ["-2", ["H", "L12"]]]}
    r = run_check(CheckSpec("i", "commutator-identity", COULOMB3,
                            {"identities": [ident], "jets": 4, "degree": 4}, 1e-8, 3))
    assert r.status == "fail" and r.witness


def test_empty_suite():
    result = run_suite([])
    assert result.summary == {"checks": 0, "pass": 0, "fail": 0, "error": 0, "ok": True}


def test_exact_check_rejects_tolerance():
    r = run_check(CheckSpec("e", "exact-eigen", COULOMB3, {"qmax": 1}, 1e-9, 0))
    assert r.status == "error" and "tolerance 0" in r.witness["error"]


def test_unknown_kind_is_error_not_pass():
    assert run_check(CheckSpec("x", "made-up", COULOMB3)).status == "error"


def test_duplicate_names_rejected():
    s = CheckSpec("same", "degeneracy", COULOMB3, {"qmax": 1})
    with pytest.raises(ValueError):
        run_suite([s, s])


def test_coulomb_sign_mutation_has_witness():
    spec = CheckSpec("n", "numeric-eigen", COULOMB3,
                     {"system": "parabolic", "frame": "cartesian", "qmax": 1, "points": 3, "mode": "float"},
                     1e-8, 1, mutation="coulomb_sign")
    r = run_check(spec)
    assert r.status == "fail"
    assert r.worst_residual > 1e-3 and "point" in json.dumps(r.witness)


SELECTOR_FOR = {
    "coulomb_sign": "numeric",
    "y1_coefficient": "tridiagonal",
    "laguerre_core": "exact",
    "z_first_order": "exact",
    "x_potential": "numeric",
    "commuting_set": "commutators",
}


@pytest.mark.parametrize("mutation", sorted(MUTATIONS))
def test_every_mutation_is_caught(mutation):
    specs = default_suite(COULOMB3, seed=5, selector=SELECTOR_FOR[mutation], qmax=2, points=4)
    clean = run_suite(specs)
    assert clean.ok
    mutated = run_suite(with_mutation(specs, mutation))
    assert mutated.summary["fail"] > 0
    assert mutated.summary["error"] == 0


def test_determinism_and_order():
    specs = default_suite(P3, seed=9, selector="commutators")
    a = run_suite(specs)
    b = run_suite(list(reversed(specs)))
    assert [r.deterministic() for r in a.reports] == [r.deterministic() for r in b.reports]
    assert [r.name for r in a.reports] == sorted(r.name for r in a.reports)


def test_parallel_matches_serial():
    specs = default_suite(P3, seed=9, selector="exact")[:4]
    a = run_suite(specs, workers=1)
    b = run_suite(specs, workers=2)
    assert [r.deterministic() for r in a.reports] == [r.deterministic() for r in b.reports]


def test_json_round_trip():
    result = run_suite(default_suite(P3, seed=1, selector="tridiagonal"))
    back = loads_reports(dumps(result))
    assert [r.to_json() for r in back] == [r.to_json() for r in result.reports]
    bad = json.loads(dumps(result))
    bad["reports"][0]["extra"] = 1
    with pytest.raises(ValueError):
        loads_reports(json.dumps(bad))
    with pytest.raises(ValueError):
        CheckReport.from_json({"name": "x"})


def _golden_text():
    result = run_suite(default_suite(P3, seed=42, selector="exact"))
    return json.dumps([r.deterministic() for r in result.reports], indent=2) + "\n"


def test_golden_exact_suite():
    text = _golden_text()
    if os.environ.get("SUPERINT_UPDATE_GOLDEN"):
        GOLDEN.parent.mkdir(exist_ok=True)
        GOLDEN.write_text(text)
    assert text == GOLDEN.read_text()
