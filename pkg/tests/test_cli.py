import json
import subprocess
import sys

import pytest

from spgames import load_game, verify
from spgames.cli import run
from spgames.strategy import parse_strategy


def test_verify_command(data_path):
    code, out = run(["verify", data_path("fig1.json"), "--strategy", data_path("sigfig.json"),
                     "--bound", "5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["solution"] is True
    assert " ".join(doc["front"]) == "(4,inf,7) (inf,4,inf)"


def test_verify_failure_exit_code(data_path):
    code, out = run(["verify", data_path("fig1.json"), "--strategy", data_path("signoloop.json"),
                     "--bound", "5"])
    assert code == 1
    cex = json.loads(out)["counterexample"]
    assert cex["cost"] == "(3,inf,inf)" and cex["value"] == "inf"


def test_pareto_agrees_with_verify(data_path):
    args = [data_path("fig1.json"), "--strategy", data_path("sigfig.json"), "--bound", "5"]
    _, front = run(["pareto", *args])
    _, verdict = run(["verify", *args])
    assert front.strip() == " ".join(json.loads(verdict)["front"])


def test_solve_round_trip(data_path):
    code, out = run(["solve", data_path("fig1.json"), "--bound", "5", "--memory", "2"])
    assert code == 0
    g = load_game(data_path("fig1.json"))
    assert verify(g, parse_strategy(out, g), 5).is_solution


def test_solve_none(data_path, tmp_path):
    boolean = tmp_path / "b.json"
    assert run(["booleanize", data_path("fig1.json"), "-o", str(boolean)])[0] == 0
    code, out = run(["solve", str(boolean), "--bound", "0", "--memory", "2", "--jobs", "2"])
    assert (code, out.strip()) == (1, "none")


def test_solve_budget(data_path):
    code, _ = run(["solve", data_path("fig1.json"), "--bound", "5", "--memory", "2",
                   "--budget", "2"])
    assert code == 3


def test_binarize_command(data_path, tmp_path):
    out = tmp_path / "bin.json"
    assert run(["binarize", data_path("fig1.json"), "-o", str(out)])[0] == 0
    assert len(load_game(out).vertices) == 17


def test_improve_and_punish(data_path):
    args = [data_path("fig1_padded.json"), "--strategy", data_path("sigpadded.json"),
            "--bound", "5"]
    code, out = run(["improve", *args])
    g = load_game(data_path("fig1_padded.json"))
    assert code == 0 and verify(g, parse_strategy(out, g), 5).is_solution
    code, out = run(["punish", data_path("fig1.json"), "--strategy", data_path("sigfig.json"),
                     "--bound", "5", "--history", "v0 v1 v2"])
    assert code == 0 and json.loads(out)["states"]


def test_punish_rejects_bad_history(data_path):
    code, _ = run(["punish", data_path("fig1.json"), "--strategy", data_path("sigfig.json"),
                   "--bound", "5", "--history", "v0 v6 v7"])
    assert code == 2


def test_bounds_command():
    code, out = run(["bounds", "--vertices", "10", "--maxweight", "4", "--bound", "5",
                     "--dim", "1"])
    assert code == 0
    assert any(line.split() == ["5", "1", "45"] for line in out.splitlines())
    code, out = run(["bounds", "--vertices", "10", "--maxweight", "4", "--bound", "5",
                     "--dim", "1", "--csv"])
    assert "5,1,45" in out


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["verify"], ["bounds", "--vertices", "x"],
    ["validate", "/nonexistent.json"], ["pareto", "{game}", "--strategy", "{game}", "--bound", "1"],
])
def test_input_errors(argv, data_path):
    argv = [a.replace("{game}", data_path("fig1.json")) for a in argv]
    assert run(argv)[0] == 2


def test_validate(data_path):
    code, out = run(["validate", data_path("fig1.json")])
    assert code == 0 and json.loads(out)["vertices"] == 10


def test_module_entry_point(data_path):
    proc = subprocess.run([sys.executable, "-m", "spgames", "solve", data_path("fig1.json"),
                           "--bound", "5", "--memory", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "candidate" in proc.stderr
