"""Step-by-step replay of a proof DAG with hole accounting."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CheckerError, OpenAssumption, ParseError, RuleError, SortError, UnsupportedConstruct
from .proof import ProofDag, parse_proof
from .rules import HOLE, RULES, check_step
from .smtlib import Script, parse_script
from .terms import FALSE

VALID = "valid"
VALID_WITH_HOLES = "valid_with_holes"
INVALID = "invalid"
PARSE_ERROR = "parse_error"

EXIT_VALID = 0
EXIT_HOLES = 10
EXIT_INVALID = 20
EXIT_PARSE = 30
EXIT_SOLVER = 40

_EMPTY = frozenset()


@dataclass
class CheckReport:
    file: str | None
    steps_total: int = 0
    steps_checked: int = 0
    holes: int = 0
    verdict: str = PARSE_ERROR
    failed_step: str | None = None
    error: CheckerError | None = None
    wall_time: float = 0.0  # milliseconds
    failures: list = field(default_factory=list)

    @property
    def error_kind(self):
        return type(self.error).__name__ if self.error is not None else None

    def summary(self) -> str:
        line = (f"{self.file or '<proof>'}: {self.verdict} "
                f"({self.steps_checked}/{self.steps_total} checked, {self.holes} hole{'' if self.holes == 1 else 's'}, "
                f"{self.wall_time:.1f} ms)")
        if self.error is not None:
            where = f" at {self.failed_step}" if self.failed_step else ""
            line += f"\n  {self.error_kind}{where}: {self.error}"
        return line


def check_proof(script: Script, dag: ProofDag, *, permissive=False,
                keep_going=False, file=None) -> CheckReport:
    """Replay every step of ``dag``.

    Holes are counted, not checked. With ``permissive`` unknown rules count as
    holes. Checking stops at the first failing step unless ``keep_going``.
    """
    start = time.perf_counter()
    report = CheckReport(file, steps_total=len(dag.steps))
    concl: dict = {}
    deps: dict = {}
    for aid, t in dag.assumptions:
        concl[aid] = t
        deps[aid] = _EMPTY

    for step in dag.steps:
        try:
            if step.rule == HOLE or (permissive and step.rule not in RULES):
                if step.premises:
                    raise RuleError("holes take no premises")
                report.holes += 1
                open_ = _EMPTY
            else:
                try:
                    premises = [concl[p] for p in step.premises]
                except KeyError as e:
                    raise RuleError(f"unknown premise {e.args[0]}") from None
                open_ = _EMPTY
                for p in step.premises:
                    d = deps[p]
                    if d:
                        open_ = d if not open_ else open_ | d
                check_step(step.rule, premises, step.args, step.conclusion, open_)
                if step.rule == "local_assume":
                    open_ = frozenset((step.conclusion,))
                elif step.rule == "scope":
                    open_ = open_ - frozenset(step.args)
                report.steps_checked += 1
        except (RuleError, UnsupportedConstruct, SortError) as e:
            report.failures.append((step.id, e))
            open_ = _EMPTY
            if not keep_going:
                break
        concl[step.id] = step.conclusion
        deps[step.id] = open_

    if not report.failures:
        last = dag.steps[-1]
        if last.conclusion != FALSE:
            report.failures.append((last.id, RuleError(f"final step concludes {last.conclusion!r}, not false")))
        elif deps.get(last.id):
            report.failures.append((last.id, OpenAssumption(
                f"final step depends on undischarged assumptions {sorted(map(repr, deps[last.id]))}")))

    if report.failures:
        report.verdict = INVALID
        report.failed_step, report.error = report.failures[0]
    elif report.holes:
        report.verdict = VALID_WITH_HOLES
    else:
        report.verdict = VALID
    report.wall_time = (time.perf_counter() - start) * 1000
    return report


def check_files(problem, proof, **kw) -> CheckReport:
    """Parse a problem and a proof file and check them; parse failures are reported."""
    start = time.perf_counter()
    name = str(proof)
    try:
        script = parse_script(Path(problem).read_bytes())
        dag = parse_proof(Path(proof).read_bytes(), script)
    except (ParseError, SortError, UnsupportedConstruct, UnicodeDecodeError, OSError) as e:
        report = CheckReport(name, verdict=PARSE_ERROR)
        report.error = e if isinstance(e, CheckerError) else ParseError(0, 0, str(e))
        report.wall_time = (time.perf_counter() - start) * 1000
        return report
    report = check_proof(script, dag, file=name, **kw)
    report.wall_time = (time.perf_counter() - start) * 1000
    return report


def exit_code(report: CheckReport, *, allow_holes=False, strict=False) -> int:
    if report.verdict == VALID:
        return EXIT_VALID
    if report.verdict == VALID_WITH_HOLES:
        if strict:
            return EXIT_INVALID
        return EXIT_VALID if allow_holes else EXIT_HOLES
    if report.verdict == INVALID:
        return EXIT_INVALID
    return EXIT_PARSE
