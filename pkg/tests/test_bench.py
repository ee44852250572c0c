import csv
import shutil
from pathlib import Path

from cpcheck.bench import CSV_HEADER, bench, cactus_points, find_pairs, write_cactus, write_csv

FIX = Path(__file__).parent / "fixtures"


def copy(dst, *stems, where="proofs"):
    for s in stems:
        for ext in (".smt2", ".cpcs"):
            shutil.copy(FIX / where / (s + ext), dst / (s + ext))


def read(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_three_valid(tmp_path):
    copy(tmp_path, "trivial_false", "conjunction", "resolution_chain")
    rows = bench(tmp_path)
    out = tmp_path / "out.csv"
    write_csv(rows, out)
    table = read(out)
    assert tuple(table[0]) == CSV_HEADER
    assert [r[0] for r in table[1:]] == ["conjunction.smt2", "resolution_chain.smt2", "trivial_false.smt2"]
    assert all(r[4] == "valid" for r in table[1:])
    assert all(float(r[6]) >= 0 and float(r[5]) == 0 for r in table[1:])


def test_empty_dir(tmp_path):
    assert write_csv(bench(tmp_path)) == ",".join(CSV_HEADER) + "\n"


def test_mixed(tmp_path):
    copy(tmp_path, "trivial_false")
    copy(tmp_path, "sum_bounds_eq", where="holes")
    (tmp_path / "broken.smt2").write_text("(assert false)")
    (tmp_path / "broken.cpcs").write_text("(step t1 true :rule")
    (tmp_path / "lonely.smt2").write_text("(assert false)")
    verdicts = {r.file: r.verdict for r in bench(tmp_path)}
    assert verdicts == {"trivial_false.smt2": "valid", "sum_bounds_eq.smt2": "valid_with_holes",
                        "broken.smt2": "parse_error", "lonely.smt2": "missing_proof"}
    assert [p.name for p, _ in find_pairs(tmp_path)] == sorted(verdicts)


def test_parallel_matches_serial(tmp_path):
    copy(tmp_path, "trivial_false", "conjunction", "uf_congruence", "poly_scaled")
    a = [(r.file, r.verdict, r.steps_checked) for r in bench(tmp_path, jobs=1)]
    b = [(r.file, r.verdict, r.steps_checked) for r in bench(tmp_path, jobs=2)]
    assert a == b


def test_cactus(tmp_path):
    copy(tmp_path, "trivial_false", "conjunction")
    (tmp_path / "lonely.smt2").write_text("(assert false)")
    rows = bench(tmp_path)
    pts = cactus_points(rows)
    assert [n for n, _ in pts] == [1, 2]
    assert pts[0][1] <= pts[1][1]
    out = tmp_path / "cactus.csv"
    write_cactus(rows, out)
    assert read(out)[0] == ["solved", "cumulative_ms"] and len(read(out)) == 3
