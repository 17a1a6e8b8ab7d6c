import json

import pytest

from sigmainv.cli import main
from sigmainv.lattice import IntegerLattice


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_special_values(capsys):
    code, out, _ = run(capsys, "--format", "json", "special", "--elliptic-e", "2*sqrt(2)/3", "--aubin", "3")
    doc = json.loads(out)
    assert code == 0 and doc["elliptic_E"] == "1.113741102"
    assert doc["aubin"] == "6*2^(2/3)*pi^(4/3)"


def test_special_rejects_code(capsys):
    code, _, err = run(capsys, "special", "--elliptic-e", "__import__('os')")
    assert code == 2 and "unsupported" in err


def test_torus_direction(capsys):
    code, out, _ = run(capsys, "torus", "--direction", "48,56,-76,28", "--format", "json")
    assert code == 0 and json.loads(out)["W_over_pi4"].startswith("27.724")


def test_euclid3(capsys):
    code, out, _ = run(capsys, "euclid3", "--id", "E3", "--format", "json")
    assert code == 0 and json.loads(out)["W_printed"] == "86/27*sqrt(43)*pi^3"
    code, out, _ = run(capsys, "euclid3", "--diffeo", "E1", "E2", "--format", "json")
    assert json.loads(out)["diffeomorphic"] is False
    code, out, _ = run(capsys, "euclid3", "--table", "4")
    assert "E9" in out and "E1 " not in out
    code, _, err = run(capsys, "euclid3", "--id", "E42")
    assert code == 2 and "unknown" in err


def test_lens_basis_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "lens", "--p", "7", "--q", "2", "--degree", "7", "--basis")
    doc = json.loads(out)
    assert code == 0 and doc["dimension"] == 10 == len(doc["basis"]) == doc["molien_dimension"]
    assert doc["ambient_dimension"] == 64


def test_elliptic_subcommands(capsys):
    code, out, _ = run(capsys, "--format", "json", "elliptic", "--case", "b", "--h1", "icosahedral", "--h2", "7")
    assert code == 0 and json.loads(out)["pi1_order"] == 840
    code, out, _ = run(capsys, "--format", "json", "elliptic", "--lens", "7,1,2")
    assert json.loads(out)["diffeomorphic"] is False
    code, out, _ = run(capsys, "--format", "json", "elliptic", "--verify-l31")
    doc = json.loads(out)
    assert code == 1 and doc["sum_of_squares"] and doc["mean_constant"] == "5" and not doc["round"]


def test_kummer(capsys):
    code, out, _ = run(capsys, "--format", "json", "kummer", "--det", "1", "--weights", "1x16", "--s", "0.5")
    doc = json.loads(out)
    assert code == 0 and doc["volume"] == "2*pi^2 + 6*pi^4" and doc["singular_classes"] == 16


def test_lattice_file_and_errors(capsys, tmp_path):
    f = tmp_path / "l.json"
    f.write_text(IntegerLattice.from_columns([[2, 0], [1, 3]]).to_json())
    code, out, _ = run(capsys, "--format", "json", "lattice", "--file", str(f), "--theta", "10", "--shortest")
    doc = json.loads(out)[str(f)]
    assert code == 0 and doc["volume"] == 6 and doc["theta"]["0"] == 1
    code, _, err = run(capsys, "lattice", "--file", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    f.write_text("{not json")
    assert run(capsys, "lattice", "--file", str(f))[0] == 2
    assert run(capsys, "lattice", "--theta", "4000", "--budget", "3")[0] == 3


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nope"])
    assert e.value.code == 2
    assert run(capsys, "torus")[0] == 2
    assert run(capsys, "--precision", "0", "special", "--aubin", "3")[0] == 2


def test_report_selection(capsys):
    code, out, _ = run(capsys, "--format", "json", "report", "--select", "prelim")
    doc = json.loads(out)
    assert code == 0 and doc["summary"] == {"total": 3, "pass": 3, "fail": 0, "flagged": 0}
    assert all(c["id"].startswith("prelim.") for c in doc["claims"])


def test_report_negative_control(capsys):
    code, out, _ = run(capsys, "--format", "json", "report", "--select", "torus", "--negative-control")
    doc = json.loads(out)
    assert code == 1 and doc["summary"]["fail"] >= 1
