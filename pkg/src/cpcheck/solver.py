"""Driving an external SMT solver through a command template."""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass

from .errors import SolverOutputUnparsable, SolverSpawnError
from .smtlib import Script, print_script

ENV_VAR = "CPC_SOLVER"
_STATUSES = ("unsat", "sat", "unknown")


@dataclass(frozen=True)
class SolverResult:
    status: str          # unsat, sat, unknown or timeout
    proof: str | None = None
    elapsed_ms: float = 0.0


def default_command() -> str | None:
    return os.environ.get(ENV_VAR) or None


def solve_external(script: Script, solver_cmd: str | None = None, timeout: float = 60.0) -> SolverResult:
    """Run ``solver_cmd`` on ``script``.

    ``{file}`` in the template is replaced by the path of a temporary problem
    file; without it the path is appended. On ``unsat`` the remaining output is
    returned verbatim as proof text.
    """
    cmd = solver_cmd or default_command()
    if not cmd:
        raise SolverSpawnError(f"no solver command given and {ENV_VAR} is unset")
    if timeout <= 0:
        return SolverResult("timeout")
    with tempfile.TemporaryDirectory(prefix="cpcheck-") as tmp:
        path = os.path.join(tmp, "problem.smt2")
        with open(path, "wb") as fh:
            fh.write(print_script(script).encode("utf-8"))
        argv = [a.replace("{file}", path) for a in shlex.split(cmd)]
        if not any(path in a for a in argv):
            argv.append(path)
        start = time.perf_counter()
        try:
            proc = subprocess.run(argv, capture_output=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            return SolverResult("timeout", elapsed_ms=(time.perf_counter() - start) * 1000)
        except OSError as e:
            raise SolverSpawnError(f"cannot run {argv[0]}: {e}") from e
        elapsed = (time.perf_counter() - start) * 1000
    out = proc.stdout.decode("utf-8", errors="replace")
    first, _, rest = out.lstrip().partition("\n")
    status = first.strip()
    if status not in _STATUSES:
        err = proc.stderr.decode("utf-8", errors="replace").strip()
        raise SolverOutputUnparsable(
            f"solver exited with {proc.returncode}; first line {status!r}" + (f"; stderr: {err}" if err else ""))
    return SolverResult(status, rest if status == "unsat" else None, elapsed)
