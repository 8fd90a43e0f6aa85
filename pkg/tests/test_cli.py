"""CLI surface: flags, JSON reports, exit codes."""

import json
import subprocess
import sys

import pytest

from blockwyt.cli import main
from blockwyt.rules import BlockingSpec, Flavor, Mode
from blockwyt.solver import PGrid, solve_grid


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_solve_round_trip(tmp_path, capsys):
    out = tmp_path / "grid.bwng"
    code, text = run(capsys, "solve", "--k", "2", "--n", "128", "--out", str(out))
    assert code == 0
    assert str(out) in text
    grid = PGrid.load(out)
    assert grid.spec == BlockingSpec(Mode.ALL, Flavor.BLOCKING, 2)
    assert grid.bit_payload() == solve_grid(grid.spec, 128).bit_payload()


def test_solve_comply_flavor(tmp_path, capsys):
    out = tmp_path / "comply.bwng"
    code, _ = run(
        capsys, "solve", "--k", "2", "--n", "64",
        "--mode", "diag", "--flavor", "comply", "--out", str(out),
    )
    assert code == 0
    grid = PGrid.load(out)
    assert grid.spec.flavor is Flavor.COMPLY
    assert grid.spec.mode is Mode.DIAG_ONLY


def test_pairs_csv(capsys):
    code, text = run(capsys, "pairs", "--k", "1", "--n", "64", "--limit", "5")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "n,a_n,b_n,delta_n"
    assert lines[1] == "0,0,0,0"
    assert lines[2] == "1,1,2,1"
    assert len(lines) == 6


def test_verify_theorem1_passes(capsys):
    code, text = run(capsys, "verify", "theorem1", "--k", "1", "--n", "256")
    assert code == 0
    body = json.loads(text)
    assert body["ok"] is True
    assert body["candidate_set"] == "R1"
    assert body["solver_pairs"] == body["candidate_pairs"]


def test_verify_theorem1_unknown_k(capsys):
    code, text = run(capsys, "verify", "theorem1", "--k", "5")
    assert code == 1
    assert json.loads(text)["ok"] is False


def test_verify_prop2(capsys):
    code, text = run(capsys, "verify", "prop2", "--k", "3", "--n", "512")
    assert code == 0
    body = json.loads(text)
    assert body["column0_count"] == 3
    assert body["overfull_columns"] == []


def test_verify_terminal(capsys):
    code, text = run(capsys, "verify", "terminal", "--k", "20")
    assert code == 0
    assert json.loads(text)["mismatches"] == []


def test_verify_duality(capsys):
    code, text = run(capsys, "verify", "duality", "--k", "2", "--n", "64")
    assert code == 0
    body = json.loads(text)
    assert [r["mode"] for r in body["results"]] == ["all", "diag", "nim"]
    assert all(r["ok"] for r in body["results"])


def test_verify_covers(capsys):
    code, text = run(capsys, "verify", "covers", "--bound", "2000")
    assert code == 0
    body = json.loads(text)
    assert all(r["ok"] for r in body["results"])


def test_verify_cases_reports_known_failure(capsys):
    # the k=3 membership claim has a real counterexample family; the check
    # reports it and the command exits nonzero
    code, text = run(capsys, "verify", "cases", "--bound", "64")
    assert code == 1
    body = json.loads(text)
    by_name = {c["name"]: c for c in body["cases"]}
    assert all(by_name[f"k2-{t}"]["ok"] for t in ("origin", "member-odd", "member-even", "above", "below"))
    assert by_name["k3-member"]["ok"] is False
    assert by_name["k3-member"]["counterexample"][0] == [0, 2]


def test_analyze_splits(capsys):
    code, text = run(
        capsys, "analyze", "splits", "--k", "2", "--n", "2048",
        "--tail", "0.25", "--gap", "0.15",
    )
    assert code == 0
    body = json.loads(text)
    assert len(body["clusters"]) == 2
    assert body["clusters"][0]["center"] == pytest.approx(1.618, abs=0.01)


def test_module_invocation_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "blockwyt.cli", "verify", "terminal", "--k", "10"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True


def test_play_immediate_win(capsys, monkeypatch):
    feed = iter(["0 0", "p"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(feed))
    code, text = run(capsys, "play", "--k", "2", "--n", "16")
    assert code == 0
    assert "human_won" in text


def test_play_one_round(capsys, monkeypatch):
    # human previous at (1, 1): block (0,0), engine escapes to (0,1) and wins
    feed = iter(["1 1", "p", "0 0"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(feed))
    code, text = run(capsys, "play", "--k", "2", "--n", "16")
    assert code == 0
    assert "engine_won" in text
