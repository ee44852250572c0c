"""Batch checking of problem/proof pairs with CSV and cactus-plot output."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .checker import check_files
from .errors import CheckerError
from .smtlib import parse_script
from .solver import solve_external

CSV_HEADER = ("file", "steps_total", "steps_checked", "holes", "verdict", "solver_ms", "check_ms")


@dataclass(frozen=True)
class BenchRow:
    file: str
    steps_total: int
    steps_checked: int
    holes: int
    verdict: str
    solver_ms: float
    check_ms: float

    def as_tuple(self):
        return (self.file, self.steps_total, self.steps_checked, self.holes, self.verdict,
                f"{self.solver_ms:.3f}", f"{self.check_ms:.3f}")


def find_pairs(directory) -> list:
    """Every ``X.smt2`` with a sibling ``X.cpcs``, sorted by name.

    A problem without a proof is still listed (with ``None``) so that it shows
    up as a row.
    """
    pairs = []
    for smt in sorted(Path(directory).glob("*.smt2")):
        proof = smt.with_suffix(".cpcs")
        pairs.append((smt, proof if proof.exists() else None))
    return pairs


def _one(job) -> BenchRow:
    smt, proof, solver, timeout = job
    solver_ms = 0.0
    if solver:
        try:
            res = solve_external(parse_script(smt.read_bytes()), solver, timeout)
            solver_ms = res.elapsed_ms
        except (CheckerError, OSError):
            pass
    if proof is None:
        return BenchRow(smt.name, 0, 0, 0, "missing_proof", solver_ms, 0.0)
    try:
        r = check_files(smt, proof)
    except Exception as e:  # a single bad file never aborts the batch
        return BenchRow(smt.name, 0, 0, 0, f"error:{type(e).__name__}", solver_ms, 0.0)
    return BenchRow(smt.name, r.steps_total, r.steps_checked, r.holes, r.verdict, solver_ms, r.wall_time)


def bench(directory, jobs: int = 1, solver: str | None = None, timeout: float = 60.0) -> list:
    jobs_in = [(smt, proof, solver, timeout) for smt, proof in find_pairs(directory)]
    if jobs > 1 and len(jobs_in) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_one, jobs_in))
    else:
        rows = [_one(j) for j in jobs_in]
    return sorted(rows, key=lambda r: r.file)


def write_csv(rows, out=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_tuple())
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text)
    return text


def cactus_points(rows) -> list:
    """(solved count, cumulative ms) for successfully checked rows, fastest first."""
    times = sorted(r.solver_ms + r.check_ms for r in rows
                   if r.verdict in ("valid", "valid_with_holes"))
    points, total = [], 0.0
    for i, t in enumerate(times, 1):
        total += t
        points.append((i, total))
    return points


def write_cactus(rows, out) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("solved", "cumulative_ms"))
    for n, t in cactus_points(rows):
        w.writerow((n, f"{t:.3f}"))
    Path(out).write_text(buf.getvalue())
    return buf.getvalue()
