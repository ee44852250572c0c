"""
Batch checking and a cactus plot
================================

Checks every fixture pair, writes the CSV the CLI writes, and draws the
cactus curve as text.
"""

import tempfile
from pathlib import Path

from cpcheck.bench import bench, cactus_points, write_cactus, write_csv

FIX = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "proofs"

rows = bench(FIX)
print(write_csv(rows))

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "cactus.csv"
    write_cactus(rows, out)
    print(out.read_text())

# solved instances against cumulative time; one # per 0.1 ms
for n, total in cactus_points(rows):
    print(f"{n:3d} {'#' * max(1, int(total * 10))} {total:.2f} ms")
