import json
import subprocess
import sys

import pytest

from carlitz_euler.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_carlitz_phi(capsys):
    code, out, _ = run(capsys, "carlitz", "phi", "--q", "2", "--a", "T^2")
    assert code == 0
    rep = json.loads(out)
    assert rep["phi"] == "F^2 + (T^2+T)*F + T^2"
    assert rep["schema"] == "carlitz-euler-report/1"
    assert rep["summary"]["failed"] == 0


@pytest.mark.parametrize("argv", [
    ["carlitz", "phi", "--q", "2", "--a", "T^^2"],
    ["carlitz", "phi", "--q", "6", "--a", "T"],
    ["carlitz", "phi", "--q", "2", "--a", "0"],
    ["euler", "run", "--M", "6"],
    ["euler", "run", "--check", "nonsense"],
    ["run", "euler", "--M", "6"],
    ["cyclo", "stark-unit", "--q", "2", "--m", "1"],
])
def test_bad_input_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_argparse_errors_exit_2(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["carlitz", "phi", "--q", "2"]) == 2
    capsys.readouterr()


def test_help_exit_0(capsys):
    assert main(["--help"]) == 0
    assert "carlitz" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["cyclo", "verify-distribution", "--q", "2", "--m", "T^2+T+1", "--qprime", "T"],
    ["cyclo", "verify-congruence", "--q", "3", "--m", "T^2+1", "--qprime", "T+1"],
    ["cyclo", "stark-unit", "--q", "2", "--m", "T^3"],
    ["infinity", "valuations", "--q", "2", "--m", "T^3+T+1"],
    ["lvalue", "--q", "3", "--m", "T^2+1"],
    ["stark", "--q", "2", "--m", "T^3+T+1"],
    ["classnumber", "--q", "2", "--m", "T^3+T+1"],
])
def test_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv, "--deterministic")
    rep = json.loads(out)
    assert code == 0
    assert rep["summary"]["failed"] == 0
    assert all(c["timing"] == "—" for c in rep["checks"])


def test_timings_without_deterministic(capsys):
    _, out, _ = run(capsys, "run", "carlitz", "--q", "2")
    t = json.loads(out)["checks"][0]["timing"]
    assert t.endswith("s") and t != "—"


def test_output_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "carlitz", "phi", "--q", "2", "--a", "T", "-o", str(path), "--deterministic")
    assert code == 0
    rep = json.loads(path.read_text(encoding="utf-8"))
    assert rep["phi"] == "F + T"


def test_tsv(capsys):
    code, out, _ = run(capsys, "stark", "--q", "2", "--m", "T^3+T+1", "--tsv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].split("\t")[0] == "character"
    assert len(lines) > 1
    assert all(len(l.split("\t")) == len(lines[0].split("\t")) for l in lines)


def test_run_carlitz_deterministic_bytes(capsys):
    argv = ["run", "carlitz", "--deterministic", "--seed", "7"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    cfg = json.loads(out1)["config"]
    assert cfg["seed"] == 7 and cfg["q"] == [2, 3]


def test_run_stark_one_entry_per_character(capsys):
    code, out, _ = run(capsys, "run", "stark", "--q", "2", "--max-conductor-deg", "2", "--deterministic")
    rep = json.loads(out)
    assert code == 0
    names = [c["name"] for c in rep["checks"]]
    assert len(names) == len(set(names)) > 0


def test_search_ell_inconclusive(capsys):
    code, out, _ = run(capsys, "euler", "search-ell", "--max-deg", "4", "--deterministic")
    rep = json.loads(out)
    assert rep["status"] == "inconclusive"
    assert rep["candidates"] and not any(c["pass"] for c in rep["candidates"])


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "carlitz_euler", "carlitz", "phi", "--q", "2", "--a", "T^2",
                        "--deterministic"], capture_output=True, text=True, timeout=120)
    assert r.returncode == 0
    assert json.loads(r.stdout)["phi"] == "F^2 + (T^2+T)*F + T^2"
