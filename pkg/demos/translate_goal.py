"""
Translating a goal to SMT-LIB
=============================

A group-theory goal: if e' is a left identity then it equals e.
"""

from pathlib import Path

from cpcheck import parse_goal, preprocess, print_script, translate

FIX = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "goals"

# the raw goal still uses iff, which the output fragment does not allow
goal = parse_goal((FIX / "group_identity.goal").read_bytes())
print("conclusion before:", goal.conclusion)

# preprocessing rewrites it and records why
goal = preprocess(goal)
for before, after, reason in goal.rewrites:
    print(f"rewrite ({reason}): {before}  ~>  {after}")

# translation negates the conclusion and asserts everything
rec = translate(goal)
print()
print(print_script(rec.script))

# each uninterpreted sort needs a reason to believe it is inhabited
for sort, why in rec.obligations.items():
    print(f"sort {sort} is nonempty: {why}")
