"""
Checking refutation proofs
==========================

Every fixture proof is replayed step by step, then one step is swapped for a
hole and one conclusion is tampered with.
"""

from dataclasses import replace
from pathlib import Path

from cpcheck import check_files, check_proof, exit_code, parse_proof, parse_script

FIX = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "proofs"

for proof in sorted(FIX.glob("*.cpcs")):
    report = check_files(proof.with_suffix(".smt2"), proof)
    print(report.summary())

# Trust one step instead of checking it
script = parse_script((FIX / "group_identity.smt2").read_bytes())
dag = parse_proof((FIX / "group_identity.cpcs").read_bytes(), script)
holed = list(dag.steps)
holed[3] = replace(holed[3], rule="hole", premises=(), args=())
report = check_proof(script, type(dag)(dag.assumptions, holed, dag.final_step))
print()
print(report.summary())
print("exit code:", exit_code(report), "| with --allow-holes:", exit_code(report, allow_holes=True))

# A wrong conclusion is caught at the step that claims it
bad = list(dag.steps)
bad[0] = replace(bad[0], conclusion=bad[1].conclusion)
report = check_proof(script, type(dag)(dag.assumptions, bad, dag.final_step), keep_going=True)
print()
print(report.summary())
for sid, err in report.failures[1:]:
    print(f"  then {type(err).__name__} at {sid}")
