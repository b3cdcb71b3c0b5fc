import io
import json
import math
from fractions import Fraction

import pytest

from superint.cli import main, parse_point_entry, point_to_float
from superint.verify import loads_reports


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_spectrum_n3_rows():
    code, text = run("spectrum", "--n", "3", "--gamma", "1", "--p", "0,0", "--system", "parabolic", "--qmax", "2")
    assert code == 0
    rows = [l for l in text.splitlines() if l.startswith("(")]
    ground = [r for r in rows if r.startswith("(0,0,[0])")]
    assert len(ground) == 1 and "-1/2" in ground[0].split()
    assert sum(1 for r in rows if r.split()[2] == "-1/18") == 4
    assert "q=2: 4" in text


def test_spectrum_rows_sorted_by_energy():
    code, text = run("spectrum", "--n", "3", "--p", "1/2,3", "--qmax", "3", "--json")
    data = json.loads(text)
    energies = [Fraction(r["E"]) for r in data["rows"]]
    assert energies == sorted(energies)


def test_spectrum_n4_single_row():
    code, text = run("spectrum", "--n", "4", "--gamma", "1", "--p", "0,0,0", "--system", "parabolic", "--qmax", "0")
    rows = [l for l in text.splitlines() if l.startswith("(")]
    assert code == 0 and len(rows) == 1 and rows[0].split()[2] == "-2/9"


def test_p_length_rejected(capsys):
    code, _ = run("spectrum", "--p", "0,0,0", "--n", "3")
    assert code == 2
    assert "p length must be n-1" in capsys.readouterr().err


def test_unknown_flag(capsys):
    code, _ = run("spectrum", "--bogus")
    assert code == 2
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["spectrum", "--gamma", "0.5"],
    ["spectrum", "--n", "2", "--p", "0", "--system", "parabolic"],
    ["spectrum", "--gamma", "-1"],
    ["eigenfunction", "--qn", "1,0"],
])
def test_invalid_configs(argv):
    assert run(*argv)[0] == 2


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 4, "p": ["0", "0", "0"], "qmax": 0, "gamma": "2"}))
    code, text = run("spectrum", "--config", str(cfg), "--gamma", "1")
    assert code == 0 and "-2/9" in text
    cfg.write_text(json.dumps({"n": 3, "colour": "red"}))
    assert run("spectrum", "--config", str(cfg))[0] == 2


def test_eigenfunction_text():
    code, text = run("eigenfunction", "--n", "3", "--p", "0,0", "--qn", "1,0,0")
    assert code == 0
    assert "polypart in (s, t, z1): 1 + -1 * s" in text
    assert "sqrt_minus_2E: 1/2" in text
    code, text = run("eigenfunction", "--n", "3", "--p", "0,0", "--qn", "0,0,0")
    assert "polypart in (s, t, z1): 1\n" in text
    assert "exp(-(1/2)*(mu^2+nu^2))" in text


def test_eigenfunction_point():
    code, text = run("eigenfunction", "--n", "3", "--system", "spherical", "--qn", "0,0,0",
                     "--point", "1,pi/3,pi/4", "--json")
    data = json.loads(text)
    assert data["psi"] == pytest.approx(math.exp(-1))


def test_point_parsing():
    assert point_to_float(parse_point_entry("pi/5")) == pytest.approx(math.pi / 5)
    assert point_to_float(parse_point_entry("-pi")) == pytest.approx(-math.pi)
    assert point_to_float(parse_point_entry("3/4*pi")) == pytest.approx(0.75 * math.pi)
    assert point_to_float(parse_point_entry("1/2")) == 0.5
    with pytest.raises(ValueError):
        parse_point_entry("0.3")


def test_verify_all_summary():
    code, text = run("verify", "--all", "--n", "3", "--gamma", "1", "--p", "1/2,3", "--seed", "42", "--points", "5")
    last = text.strip().splitlines()[-1]
    n = int(last.split()[0])
    assert code == 0 and last == f"{n} checks, {n} pass, 0 fail, 0 error"


def test_commutators_n5_rows():
    code, text = run("commutators", "--n", "5")
    assert code == 0
    assert any(l.startswith("commutator-zero/n5/[H,X] ") and " pass " in l for l in text.splitlines())
    assert any(l.startswith("commutator-nonzero/n5/[Y2,Z1] ") and " pass " in l for l in text.splitlines())


def test_verify_json_round_trip_and_file(tmp_path):
    out = tmp_path / "r.json"
    code, text = run("verify", "--tridiagonal", "--n", "3", "--json", "--out", str(out))
    assert code == 0
    reports = loads_reports(text)
    assert reports and all(r.status == "pass" for r in reports)
    assert json.loads(out.read_text()) == json.loads(text)


def test_mutation_gives_failure_exit():
    code, text = run("verify", "--numeric", "--n", "3", "--points", "3", "--mutation", "coulomb_sign")
    assert code == 1
    assert "witness=" in text


def test_output_is_byte_identical():
    argv = ["verify", "--commutators", "--n", "3", "--p", "1/2,3", "--seed", "7"]
    assert run(*argv)[1] == run(*argv)[1]
    argv = ["spectrum", "--n", "4", "--qmax", "3"]
    assert run(*argv)[1] == run(*argv)[1]
