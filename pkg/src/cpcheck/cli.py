"""Command line entry point: translate, check, solve, bench."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import checker
from .bench import bench, write_cactus, write_csv
from .errors import CheckerError, EmptySortRisk, ParseError, SolverOutputUnparsable, SolverSpawnError, SortError, UnsupportedConstruct
from .goals import parse_goal, preprocess, translate
from .smtlib import parse_script, print_script
from .solver import ENV_VAR, solve_external


def _translate(ns) -> int:
    try:
        rec = translate(preprocess(parse_goal(Path(ns.goal).read_bytes())))
    except (ParseError, SortError, UnsupportedConstruct, EmptySortRisk, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return checker.EXIT_PARSE
    text = print_script(rec.script)
    if ns.output:
        Path(ns.output).write_text(text)
    else:
        sys.stdout.write(text)
    for sort, why in rec.obligations.items():
        print(f"; sort {sort} nonempty: {why}", file=sys.stderr)
    return 0


def _check(ns) -> int:
    report = checker.check_files(ns.problem, ns.proof, keep_going=ns.keep_going)
    print(report.summary())
    if ns.keep_going:
        for sid, err in report.failures[1:]:
            print(f"  {type(err).__name__} at {sid}: {err}")
    return checker.exit_code(report, allow_holes=ns.allow_holes, strict=ns.strict)


def _solve(ns) -> int:
    try:
        script = parse_script(Path(ns.problem).read_bytes())
    except (CheckerError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return checker.EXIT_PARSE
    try:
        res = solve_external(script, ns.solver, ns.timeout)
    except (SolverSpawnError, SolverOutputUnparsable) as e:
        print(f"solver error: {e}", file=sys.stderr)
        return checker.EXIT_SOLVER
    print(res.status)
    if res.proof:
        if ns.proof_out:
            Path(ns.proof_out).write_text(res.proof)
        else:
            sys.stdout.write(res.proof)
    return 0


def _bench(ns) -> int:
    if not Path(ns.dir).is_dir():
        print(f"error: {ns.dir} is not a directory", file=sys.stderr)
        return checker.EXIT_PARSE
    rows = bench(ns.dir, ns.jobs, ns.solver, ns.timeout)
    text = write_csv(rows, ns.csv)
    if not ns.csv:
        sys.stdout.write(text)
    if ns.cactus:
        write_cactus(rows, ns.cactus)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpcheck", description="Translate goals to SMT-LIB and check refutation proofs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    t = sub.add_parser("translate", help="goal file to SMT-LIB")
    t.add_argument("goal")
    t.add_argument("-o", "--output")
    t.set_defaults(fn=_translate)

    c = sub.add_parser("check", help="check a proof against a problem")
    c.add_argument("problem")
    c.add_argument("proof")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--strict", action="store_true", help="treat holes as failures")
    mode.add_argument("--allow-holes", action="store_true", help="exit 0 for proofs with holes")
    c.add_argument("--keep-going", action="store_true", help="report every failing step")
    c.set_defaults(fn=_check)

    s = sub.add_parser("solve", help="run an external solver")
    s.add_argument("problem")
    s.add_argument("--solver", help=f"command template with {{file}}; defaults to ${ENV_VAR}")
    s.add_argument("--timeout", type=float, default=60.0)
    s.add_argument("--proof-out")
    s.set_defaults(fn=_solve)

    b = sub.add_parser("bench", help="check every problem/proof pair in a directory")
    b.add_argument("dir")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--csv")
    b.add_argument("--cactus", help="write (solved, cumulative_ms) points here")
    b.add_argument("--solver")
    b.add_argument("--timeout", type=float, default=60.0)
    b.set_defaults(fn=_bench)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return ns.fn(ns)
