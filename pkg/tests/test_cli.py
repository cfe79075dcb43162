import json
import subprocess
import sys

import pytest

from vdw.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build(capsys):
    code, out, _ = run(capsys, "build", "10", "2")
    assert code == 0
    assert "outputs.facets\t20" in out
    assert "outputs.f_vector\t0=10 1=36 2=20" in out


def test_build_json_faces(capsys):
    code, out, _ = run(capsys, "build", "5", "1", "--json", "--faces")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert len(data["outputs"]["faces"]) == 15
    assert data["outputs"]["reduced_chi"] == -6


def test_betti(capsys):
    code, out, _ = run(capsys, "betti", "15", "3", "--torsion")
    assert code == 0
    assert out.splitlines() == ["0\t0\t", "1\t0\t", "2\t9\t", "3\t0\t"]
    code, out, _ = run(capsys, "betti", "15", "3", "--torsion", "--json")
    assert json.loads(out)["outputs"]["wedge"] == "(S^2)^v9"


@pytest.mark.parametrize("argv", [
    ["morse", "10", "2", "--strategy=example"],
    ["morse", "15", "3", "--strategy=theorem-main"],
    ["morse", "30", "6", "--strategy=contractible", "--a=4"],
])
def test_morse_ok(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "checks.acyclic\ttrue" in out


def test_morse_json_summary(capsys):
    code, out, _ = run(capsys, "morse", "30", "6", "--strategy=contractible", "--a=4", "--json")
    data = json.loads(out)
    assert data["outputs"]["critical"] == ["{30}"]
    assert data["outputs"]["homotopy_summary"] == "contractible"


@pytest.mark.parametrize("argv", [
    ["morse", "31", "6", "--strategy=contractible", "--a=4"],
    ["morse", "30", "6", "--strategy=contractible"],
    ["morse", "30", "6", "--strategy=example"],
    ["bounds"],
    ["bounds", "--a", "3", "--k", "4"],
    ["bounds", "--a", "1"],
    ["table", "--max-k", "9"],
    ["verify", "10", "2", "/nonexistent/file"],
])
def test_precondition_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("vdw ")


def test_contractible_message_names_inequality(capsys):
    _, _, err = run(capsys, "morse", "31", "6", "--strategy=contractible", "--a=4")
    assert "n <= (a+1)*k" in err


@pytest.mark.parametrize("argv", [["build", "0", "2"], ["morse", "10", "2"], ["frobnicate"],
                                  ["morse", "10", "2", "--strategy=greedy"]])
def test_argparse_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_determinism(capsys, tmp_path):
    outs = []
    for i in range(2):
        f = tmp_path / f"m{i}.tsv"
        run(capsys, "morse", "15", "3", "--strategy=theorem-main", "--json",
            "--out", str(tmp_path / f"r{i}.json"), "--save-matching", str(f))
        outs.append((f.read_bytes(), (tmp_path / f"r{i}.json").read_bytes()))
    assert outs[0] == outs[1]


def test_verify_round_trip(capsys, tmp_path):
    f = tmp_path / "m.tsv"
    run(capsys, "morse", "20", "4", "--strategy=example", "--save-matching", str(f))
    code, out, _ = run(capsys, "verify", "20", "4", str(f))
    assert code == 0 and out.startswith("ok:")


def test_verify_duplicate_face(capsys, tmp_path):
    f = tmp_path / "m.tsv"
    f.write_text("1\t1,2\n1\t1,3\n")
    code, out, _ = run(capsys, "verify", "10", "2", str(f))
    assert code == 1
    assert out.startswith("invalid matching: duplicate face (1,)")


def test_verify_cycle(capsys, tmp_path):
    f = tmp_path / "m.tsv"
    f.write_text("1\t1,2\n2\t2,3\n3\t1,3\n")
    code, out, _ = run(capsys, "verify", "6", "2", str(f), "--json")
    data = json.loads(out)
    assert code == 1 and data["exit"] == 1
    assert data["message"].startswith("cycle: {")


def test_verify_critical_mismatch(capsys, tmp_path):
    f = tmp_path / "m.tsv"
    f.write_text("1\t1,2\n# critical\n3\n")
    code, out, _ = run(capsys, "verify", "4", "1", str(f))
    assert code == 1 and out.startswith("critical list mismatch")


def test_verify_parse_error(capsys, tmp_path):
    f = tmp_path / "m.tsv"
    f.write_text("1;1,2\n")
    code, out, _ = run(capsys, "verify", "4", "1", str(f))
    assert code == 2 and out.startswith("parse error: line 1:")


def test_mobius(capsys):
    code, out, _ = run(capsys, "mobius", "30", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["outputs"]["mobius"] == data["outputs"]["gamma_signed_sum"] == -1
    assert data["outputs"]["critical_cell"] == "{0,6,10,15,30}"


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--a", "4", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["outputs"]["L"] == 12 and data["outputs"]["M"] == 2
    assert data["outputs"]["threshold"] == "6"
    code, out, _ = run(capsys, "bounds", "--k", "30")
    assert code == 0 and "outputs.r\t4" in out


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--max-k", "5")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split("\t")[:3] == ["k", "n", "homotopy"]
    assert [l.split("\t")[2] for l in lines[1:]] == [
        "(S^1)^v6", "(S^1)^v7", "(S^2)^v9", "(S^2)^v22", "(S^2)^v32"]
    assert all(l.endswith("true") for l in lines[1:])


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "vdw.cli", "mobius", "12"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "outputs.mobius\t0" in proc.stdout
