import json
import subprocess
import sys

import pytest

from repdim.cli import run_command
from repdim.dsl import load_algebra
from repdim.strings import classify


def run_json(capsys, *argv):
    rc = run_command([*argv, "--json"])
    return rc, json.loads(capsys.readouterr().out)


@pytest.fixture
def files(algebras_dir):
    return {p.stem: str(p) for p in algebras_dir.iterdir()}


def test_repdim_bound_dihedral(capsys, files):
    rc, data = run_json(capsys, "repdim-bound", files["dihedral_socle"])
    assert rc == 0
    assert data["gldim"] == 3 and data["verified"]
    assert data["conclusion"] == "repdim <= 3"
    assert data["catalog"]["count"] == 9
    assert data["classification"]["c"] == 2
    qh = data["quasi_hereditary"]
    assert qh["predicted"] and qh["verified"]
    assert all(s["exact"] for s in data["approximation_sequences"])
    assert data["projdims"]["A"] == 1


def test_assume_rep_infinite(capsys, files):
    rc, data = run_json(capsys, "repdim-bound", files["dihedral_socle"], "--assume-rep-infinite")
    assert rc == 0 and data["conclusion"] == "repdim = 3"
    # c = 0: nothing to conclude beyond the bound
    rc, data = run_json(capsys, "repdim-bound", files["asp"], "--assume-rep-infinite")
    assert data["conclusion"] == "repdim <= 3"


def test_human_output_matches_json(capsys, files):
    assert run_command(["gldim", files["dihedral_socle"]]) == 0
    text = capsys.readouterr().out
    rc, data = run_json(capsys, "gldim", files["dihedral_socle"])
    assert f"gldim: {data['gldim']}" in text
    assert f"gamma_dim: {data['gamma_dim']}" in text
    assert data["gamma_dim"] == 192


def test_check_asp(capsys, files):
    rc, data = run_json(capsys, "check", files["asp"])
    assert rc == 0
    cls = data["classification"]
    assert cls["string"] and cls["serial_type"] and cls["c"] == 0


def test_reduce_kronecker(capsys, files, tmp_path):
    rc, data = run_json(capsys, "reduce", files["kronecker"], "--emit-dir", str(tmp_path))
    assert rc == 0
    assert data["steps"] == 2 and data["c_values"] == [2, 1, 0]
    assert data["terminal_serial_type"]
    last = load_algebra(tmp_path / "A2.quiv")
    assert classify(last).serial_type


def test_reduce_square_uses_socle_quotient(capsys, files):
    rc, data = run_json(capsys, "reduce", files["square"])
    assert rc == 0 and len(data["socle_reductions"]) == 1


def test_square_pipeline(capsys, files):
    rc, data = run_json(capsys, "repdim-bound", files["square"])
    assert rc == 0 and data["gldim"] <= 3
    assert data["quasi_hereditary"]["predicted"] is False
    assert "P(s)" in [e["label"] for e in data["catalog"]["entries"]]


def test_split_out_and_recheck(capsys, files, tmp_path):
    out = tmp_path / "b.quiv"
    rc, data = run_json(capsys, "split", files["dihedral_socle"], "--vertex", "x", "--out", str(out))
    assert rc == 0 and data["c_before"] == 2 and data["c_after"] == 0
    rc, data = run_json(capsys, "check", str(out))
    assert data["classification"]["serial_type"] and data["algebra"]["dim"] == 8


def test_split_explicit_datum(capsys, files):
    rc, data = run_json(capsys, "split", files["dihedral_socle"], "--vertex", "x",
                        "--S1", "a", "--S2", "b", "--E1", "b", "--E2", "a")
    assert rc == 0 and data["c_after"] == 0


def test_split_invalid_datum(capsys, files):
    rc = run_command(["split", files["dihedral_socle"], "--vertex", "x",
                      "--S1", "a", "--S2", "b", "--E1", "a", "--E2", "b"])
    assert rc == 1


def test_gencog(capsys, files):
    rc, data = run_json(capsys, "gencog", files["dihedral_socle"])
    assert rc == 0 and data["count"] == 9 and data["total_dim"] == 33


def test_qh(capsys, files):
    rc, data = run_json(capsys, "qh", files["dihedral_socle"])
    assert rc == 0 and data["verified"]
    assert data["maximal"] == ["M(1_x)"]


def test_hom(capsys, files):
    rc, data = run_json(capsys, "hom", files["dihedral_socle"], files["simple"], files["Ma"])
    assert rc == 0 and data["dim"] == 1
    assert data["basis"][0]["x"] == [["0"], ["1"]]


def test_shuffle_catalog(capsys, files):
    _, a = run_json(capsys, "gldim", files["dihedral_socle"])
    _, b = run_json(capsys, "gldim", files["dihedral_socle"], "--shuffle-catalog", "3")
    assert a["projdims"] == b["projdims"] and a["gldim"] == b["gldim"]


def test_cap_exit_code(capsys, files):
    assert run_command(["gldim", files["dihedral_socle"], "--cap", "1"]) == 2
    assert "verification failed" in capsys.readouterr().err


def test_bad_files(capsys, files, tmp_path):
    bad = tmp_path / "bad.quiv"
    bad.write_text("vertices: x\narrows:\n a: x -> x\nrelations: c*a\nbound: 2\n")
    assert run_command(["check", str(bad)]) == 1
    assert "unknown arrow 'c'" in capsys.readouterr().err
    assert run_command(["check", str(tmp_path / "missing.quiv")]) == 1


def test_console_script(files):
    out = subprocess.run([sys.executable, "-m", "repdim", "check", files["asp"], "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["classification"]["c"] == 0
