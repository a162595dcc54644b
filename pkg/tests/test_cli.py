import csv
import subprocess
import sys

import pytest

from ksjq.cli import BENCH_COLUMNS, UsageError, main, parse_grid
from ksjq.data import fixture_path, read_csv

LEG1, LEG2 = str(fixture_path("flights_leg1.csv")), str(fixture_path("flights_leg2.csv"))
EXPECTED_PAIRS = [("11", "23"), ("13", "21"), ("15", "25"), ("16", "26")]


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_generate_default_relation(tmp_path):
    out = tmp_path / "r1.csv"
    assert main(["generate", "--n", "3300", "--d", "7", "--a", "2", "--g", "10",
                 "--dist", "independent", "--seed", "1", "--out", str(out)]) == 0
    rel = read_csv(out)
    assert len(rel) == 3300
    assert (rel.schema.l, rel.schema.a) == (5, 2)


def test_generate_empty_relation(tmp_path):
    out = tmp_path / "e.csv"
    assert main(["generate", "--n", "0", "--d", "3", "--out", str(out)]) == 0
    assert len(read_csv(out)) == 0


def test_generate_twice_gives_identical_files(tmp_path):
    flags = ["generate", "--n", "50", "--d", "4", "--a", "1", "--g", "3", "--dist", "anti", "--seed", "5"]
    main(flags + ["--out", str(tmp_path / "a.csv")])
    main(flags + ["--out", str(tmp_path / "b.csv")])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_run_plain_fixture(tmp_path, capsys):
    out = tmp_path / "res.csv"
    assert main(["run", LEG1, LEG2, "--k", "7", "--algo", "grouping", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0][:3] == ["left_id", "right_id", "l.dur"]
    assert [tuple(r[:2]) for r in rows[1:]] == EXPECTED_PAIRS
    stats = capsys.readouterr().out
    assert "answer size = 4" in stats
    for key in ("SS-SS=", "group_ms=", "join_ms=", "dominator_ms=", "rest_ms="):
        assert key in stats


def test_run_aggregate_fixture_sums_cost(tmp_path):
    out = tmp_path / "res.csv"
    assert main(["run", LEG1, LEG2, "--k", "6", "--aggregate", "--algo", "naive", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0][-1] == "cost"
    assert [tuple(r[:2]) for r in rows[1:]] == EXPECTED_PAIRS
    assert rows[1][-1] == "804"


def test_run_to_stdout_keeps_stats_apart(capsys):
    assert main(["run", LEG1, LEG2, "--k", "7"]) == 0
    captured = capsys.readouterr()
    assert len(captured.out.splitlines()) == 5
    assert "answer size" in captured.err


@pytest.mark.parametrize("cond", ["eq", "lt"])
def test_algorithms_write_identical_files(tmp_path, cond):
    for side, seed in (("l", "2"), ("r", "3")):
        main(["generate", "--n", "80", "--d", "4", "--a", "1", "--g", "4", "--seed", seed,
              "--out", str(tmp_path / f"{side}.csv")])
    blobs = set()
    for algo in ("naive", "grouping", "dominator"):
        out = tmp_path / f"{algo}.csv"
        assert main(["run", str(tmp_path / "l.csv"), str(tmp_path / "r.csv"), "--k", "6",
                     "--aggregate", "--cond", cond, "--algo", algo, "--out", str(out)]) == 0
        blobs.add(out.read_bytes())
    assert len(blobs) == 1


def _find_k_output(capsys, *flags):
    assert main(["find-k", LEG1, LEG2, *flags]) == 0
    return capsys.readouterr().out


def test_find_k_methods_agree_on_the_fixture(capsys):
    binary = _find_k_output(capsys, "--delta", "4", "--method", "binary")
    naive = _find_k_output(capsys, "--delta", "4", "--method", "naive")
    assert binary.splitlines()[0].startswith("k = 6 ")
    assert naive.splitlines()[0].startswith("k = 6 ")
    probes = [line for line in binary.splitlines() if line.startswith("  k=")]
    assert 1 <= len(probes) <= 3


def test_find_k_small_delta_gives_k_min(capsys):
    assert _find_k_output(capsys, "--delta", "1").startswith("k = 5 ")


def test_find_k_at_most(capsys):
    assert _find_k_output(capsys, "--delta", "4", "--mode", "at-most").startswith("k = 7 ")


def _grid(tmp_path, text):
    path = tmp_path / "grid.txt"
    path.write_text(text)
    return str(path)


def test_bench_with_no_repetitions_writes_a_header(tmp_path):
    grid = _grid(tmp_path, "n = 30\nd = 3\nk = 4\na = 0\nreps = 0\n")
    assert main(["bench", grid, "--out", str(tmp_path / "out")]) == 0
    assert _rows(tmp_path / "out" / "bench.csv") == [list(BENCH_COLUMNS)]


def test_bench_small_grid_serial_and_parallel_agree(tmp_path):
    grid = _grid(tmp_path, "n = 40\nd = 3, 4\nk = 5\na = 1\ng = 4\ndist = independent, correlated\n")
    assert main(["bench", grid, "--out", str(tmp_path / "s")]) == 0
    assert main(["bench", grid, "--out", str(tmp_path / "p"), "--parallel", "2"]) == 0
    serial, parallel = _rows(tmp_path / "s" / "bench.csv"), _rows(tmp_path / "p" / "bench.csv")
    assert len(serial) == 1 + 2 * 2 * 3
    timing = {BENCH_COLUMNS.index(c) for c in BENCH_COLUMNS if c.endswith("_ms")}

    def strip(rows):
        return [[c for i, c in enumerate(r) if i not in timing] for r in rows]
    assert strip(serial) == strip(parallel)
    for row in serial[1:]:
        rec = dict(zip(BENCH_COLUMNS, row))
        assert int(rec["lb"]) <= int(rec["count"]) <= int(rec["ub"])


@pytest.mark.slow
def test_bench_default_point(tmp_path):
    grid = _grid(tmp_path, "n = 3300\nd = 7\nk = 11\na = 2\ng = 10\ndist = independent\n")
    assert main(["bench", grid, "--out", str(tmp_path / "out")]) == 0
    rows = [dict(zip(BENCH_COLUMNS, r)) for r in _rows(tmp_path / "out" / "bench.csv")[1:]]
    assert [r["algo"] for r in rows] == ["naive", "grouping", "dominator"]
    assert len({r["count"] for r in rows}) == 1
    for r in rows:
        parts = sum(float(r[c]) for c in ("group_ms", "join_ms", "dominator_ms", "rest_ms"))
        assert parts == pytest.approx(float(r["total_ms"]), abs=0.01)


@pytest.mark.parametrize("text", ["n = many\n", "color = red\n", "k = 99\n", "algo = quick\n",
                                  "reps = -1\n", "just words\n", "d = \n"])
def test_invalid_grids(text):
    with pytest.raises(UsageError):
        parse_grid(text)


def test_errors_exit_nonzero(tmp_path, capsys):
    assert main(["run", LEG1, LEG2, "--k", "3"]) == 2
    assert main(["run", LEG1, str(tmp_path / "missing.csv"), "--k", "7"]) == 2
    assert main(["bench", _grid(tmp_path, "k = 99\n"), "--out", str(tmp_path / "o")]) == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("id,s:x\n1,oops\n")
    assert main(["run", str(bad), str(bad), "--k", "2"]) == 2
    assert "line 2, column 2" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["run", LEG1, LEG2, "--k", "7", "--algo", "quick"])
    assert exc.value.code != 0


def test_mismatched_aggregates_exit_nonzero(tmp_path):
    left, right = tmp_path / "l.csv", tmp_path / "r.csv"
    main(["generate", "--n", "10", "--d", "3", "--a", "1", "--out", str(left)])
    main(["generate", "--n", "10", "--d", "3", "--a", "1", "--agg-fn", "MIN", "--out", str(right)])
    assert main(["run", str(left), str(right), "--k", "5", "--aggregate"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ksjq.cli", "run", LEG1, LEG2, "--k", "7"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("11,23,")
