import subprocess
import sys
from pathlib import Path

import pytest

from cpcheck.cli import main

FIX = Path(__file__).parent / "fixtures"
GOALS = FIX / "goals"
PROOFS = FIX / "proofs"
HOLES = FIX / "holes"


def run(*args):
    return subprocess.run([sys.executable, "-m", "cpcheck", *map(str, args)],
                          capture_output=True, text=True)


def test_translate_stdout():
    p = run("translate", GOALS / "group_identity.goal")
    assert p.returncode == 0
    assert p.stdout == (GOALS / "group_identity.smt2").read_text()
    assert "witness constant e" in p.stderr


def test_translate_to_file(tmp_path):
    out = tmp_path / "o.smt2"
    assert main(["translate", str(GOALS / "group_identity.goal"), "-o", str(out)]) == 0
    assert out.read_text() == (GOALS / "group_identity.smt2").read_text()


def test_translate_bad_goal(tmp_path):
    g = tmp_path / "g.goal"
    g.write_text("(goal (+ 1")
    assert main(["translate", str(g)]) == 30


def test_check_valid():
    p = run("check", PROOFS / "group_identity.smt2", PROOFS / "group_identity.cpcs")
    assert p.returncode == 0 and ": valid (" in p.stdout


@pytest.mark.parametrize("flags,code", [((), 10), (("--allow-holes",), 0), (("--strict",), 20)])
def test_check_holes(flags, code):
    args = ["check", str(HOLES / "sum_bounds_eq.smt2"), str(HOLES / "sum_bounds_eq.cpcs"), *flags]
    assert main(args) == code


def test_strict_and_allow_exclusive():
    with pytest.raises(SystemExit):
        main(["check", "a", "b", "--strict", "--allow-holes"])


def test_check_invalid_keep_going(tmp_path, capsys):
    proof = tmp_path / "bad.cpcs"
    text = (PROOFS / "resolution_chain.cpcs").read_text()
    proof.write_text(text.replace("(step t3 (or q r)", "(step t3 (or r q)")
                         .replace("(step t5 r", "(step t5 q"))
    code = main(["check", str(PROOFS / "resolution_chain.smt2"), str(proof), "--keep-going"])
    out = capsys.readouterr().out
    assert code == 20
    assert "ConclusionMismatch at t3" in out and "at t5" in out


def test_check_parse_error(tmp_path):
    proof = tmp_path / "bad.cpcs"
    proof.write_text("(((")
    assert main(["check", str(PROOFS / "trivial_false.smt2"), str(proof)]) == 30


def test_solve(tmp_path):
    solver = tmp_path / "s.py"
    solver.write_text("print('unsat')\nprint('(assume a1 false)')\n")
    out = tmp_path / "p.cpcs"
    p = run("solve", PROOFS / "trivial_false.smt2", "--solver", f"{sys.executable} {solver}",
            "--proof-out", out)
    assert p.returncode == 0 and p.stdout.strip() == "unsat"
    assert out.read_text().strip() == "(assume a1 false)"


def test_solve_errors(tmp_path, monkeypatch):
    monkeypatch.delenv("CPC_SOLVER", raising=False)
    prob = str(PROOFS / "trivial_false.smt2")
    assert main(["solve", prob]) == 40
    assert main(["solve", prob, "--solver", "/definitely/not/here"]) == 40
    bad = tmp_path / "bad.smt2"
    bad.write_text("(assert")
    assert main(["solve", str(bad), "--solver", "x"]) == 30


def test_bench(tmp_path, capsys):
    csv_path, cactus = tmp_path / "r.csv", tmp_path / "c.csv"
    assert main(["bench", str(PROOFS), "--csv", str(csv_path), "--cactus", str(cactus)]) == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "file,steps_total,steps_checked,holes,verdict,solver_ms,check_ms"
    assert len(lines) == 1 + len(list(PROOFS.glob("*.smt2")))
    assert cactus.read_text().startswith("solved,cumulative_ms\n")
    assert main(["bench", str(PROOFS / "nope")]) == 30


def test_bench_stdout(capsys):
    assert main(["bench", str(HOLES)]) == 0
    assert "valid_with_holes" in capsys.readouterr().out
