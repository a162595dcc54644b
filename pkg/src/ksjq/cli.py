"""Command-line interface: generate, run, find-k, bench."""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import kernels
from .data import CSVFormatError, DatasetSpec, _fmt, generate, read_csv, write_generated
from .engine import ALGORITHMS, CATEGORIES, QueryConfig, count_bounds_for, k_range, run_query
from .kfinder import METHODS, find_k, find_k_at_most
from .partition import Condition

BENCH_COLUMNS = ("n", "d", "k", "a", "g", "dist", "algo", "rep", "total_ms", "group_ms",
                 "join_ms", "dominator_ms", "rest_ms", "count", "lb", "ub")
GRID_KEYS = ("n", "d", "k", "a", "g", "dist", "algo", "reps", "seed", "agg_fn")
_INT_KEYS = {"n", "d", "k", "a", "g", "reps", "seed"}


class UsageError(Exception):
    pass


# -- generate ----------------------------------------------------------------

def cmd_generate(args) -> int:
    spec = DatasetSpec(args.n, args.d, args.a, args.g, args.dist, args.seed, args.agg_fn)
    rel = write_generated(spec, args.out)
    print(f"wrote {len(rel)} tuples to {args.out}")
    return 0


# -- run ---------------------------------------------------------------------

def _joined_names(s1, s2, aggregate: bool) -> list[str]:
    if aggregate:
        return [f"l.{c}" for c in s1.local] + [f"r.{c}" for c in s2.local] + list(s1.aggregate)
    return [f"l.{c}" for c in s1.sky_names] + [f"r.{c}" for c in s2.sky_names]


def result_csv(answer, s1, s2, aggregate: bool) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["left_id", "right_id", *_joined_names(s1, s2, aggregate)])
    for (left, right), vec in zip(answer.result, answer.vectors.tolist()):
        writer.writerow([left, right, *(_fmt(x) for x in vec)])
    return buf.getvalue()


def cmd_run(args) -> int:
    r1, r2 = read_csv(args.left), read_csv(args.right)
    config = QueryConfig(args.k, args.aggregate, args.cond, args.algo)
    answer = run_query(r1, r2, config)
    text = result_csv(answer, r1.schema, r2.schema, args.aggregate)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    k1, k2 = answer.k_prime
    out = sys.stderr if not args.out else sys.stdout
    print(f"k = {answer.k}   k'1 = {k1}   k'2 = {k2}   algorithm = {answer.algorithm}   "
          f"backend = {kernels.BACKEND}", file=out)
    print(f"answer size = {len(answer)}", file=out)
    if answer.category_counts is not None:
        cells = "  ".join(f"{c}={answer.category_counts[c]}" for c in CATEGORIES)
        print(f"categories: {cells}", file=out)
        lb, ub = answer.bounds()
        print(f"bounds: {lb} <= {len(answer)} <= {ub}", file=out)
    times = "  ".join(f"{key}={val:.3f}" for key, val in answer.timings.items())
    print(f"timings: {times}  total_ms={answer.total_ms:.3f}", file=out)
    return 0


# -- find-k ------------------------------------------------------------------

def cmd_find_k(args) -> int:
    r1, r2 = read_csv(args.left), read_csv(args.right)
    kw = dict(aggregate=args.aggregate, condition=args.cond, algorithm=args.algo)
    if args.mode == "at-most":
        res = find_k_at_most(r1, r2, args.delta, **kw)
    else:
        res = find_k(r1, r2, args.delta, args.method, **kw)
    count = res.skyline_count
    if count is None:
        count = len(run_query(r1, r2, QueryConfig(res.k, args.aggregate, args.cond, args.algo)))
    lo, hi = k_range(r1.schema, r2.schema, args.aggregate)
    print(f"k = {res.k}   (valid range {lo}..{hi}, delta = {args.delta}, mode = {args.mode}, "
          f"method = {res.method})")
    print(f"answer size at k = {count}")
    if not res.satisfied:
        print("note: no k met the threshold; returned the default")
    print("probes:")
    for p in res.trace:
        bounds = "-" if p.lb is None else f"[{p.lb}, {p.ub}]"
        exact = "skipped" if p.exact is None else str(p.exact)
        print(f"  k={p.k}  bounds={bounds}  exact={exact}")
    return 0


# -- bench -------------------------------------------------------------------

def parse_grid(text: str, source: str = "<grid>") -> list[dict]:
    """``key = v1, v2`` lines -> list of grid points (Cartesian product)."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{source}, line {lineno}: expected 'key = value'")
        key, _, rhs = (s.strip() for s in line.partition("="))
        if key not in GRID_KEYS:
            raise UsageError(f"{source}, line {lineno}: unknown key {key!r}; known keys {GRID_KEYS}")
        items = [v.strip() for v in rhs.split(",") if v.strip()]
        if not items:
            raise UsageError(f"{source}, line {lineno}: no values for {key!r}")
        if key in _INT_KEYS:
            try:
                items = [int(v) for v in items]
            except ValueError:
                raise UsageError(f"{source}, line {lineno}: {key} needs integers") from None
        values[key] = items
    defaults = {"n": [3300], "d": [7], "k": [11], "a": [2], "g": [10], "dist": ["independent"],
                "algo": ["naive", "grouping", "dominator"], "reps": [1], "seed": [1], "agg_fn": ["SUM"]}
    merged = {k: values.get(k, defaults[k]) for k in GRID_KEYS}
    points = [dict(zip(GRID_KEYS, combo)) for combo in itertools.product(*merged.values())]
    for p in points:
        if p["algo"] not in ALGORITHMS:
            raise UsageError(f"{source}: unknown algorithm {p['algo']!r}")
        if p["reps"] < 0:
            raise UsageError(f"{source}: reps must be >= 0")
        try:
            spec = DatasetSpec(p["n"], p["d"], p["a"], p["g"], p["dist"], p["seed"], p["agg_fn"])
        except ValueError as exc:
            raise UsageError(f"{source}: {exc}") from None
        p["dist"] = spec.dist
        lo, hi = k_range(spec.schema(), spec.schema(), p["a"] > 0)
        if not lo <= p["k"] <= hi:
            raise UsageError(f"{source}: k={p['k']} outside {lo}..{hi} for d={p['d']}, a={p['a']}")
    return points


def _bench_point(point: dict) -> list[list]:
    spec1 = DatasetSpec(point["n"], point["d"], point["a"], point["g"], point["dist"],
                        2 * point["seed"], point["agg_fn"])
    spec2 = DatasetSpec(point["n"], point["d"], point["a"], point["g"], point["dist"],
                        2 * point["seed"] + 1, point["agg_fn"])
    r1, r2 = generate(spec1), generate(spec2)
    config = QueryConfig(point["k"], point["a"] > 0, Condition.EQ, point["algo"])
    rows = []
    bounds = None
    for rep in range(point["reps"]):
        ans = run_query(r1, r2, config)
        if bounds is None:
            bounds = ans.bounds() if ans.category_counts is not None else count_bounds_for(r1, r2, config)
        t = ans.timings
        rows.append([point["n"], point["d"], point["k"], point["a"], point["g"], point["dist"],
                     point["algo"], rep, f"{ans.total_ms:.3f}", f"{t['group_ms']:.3f}",
                     f"{t['join_ms']:.3f}", f"{t['dominator_ms']:.3f}", f"{t['rest_ms']:.3f}",
                     len(ans), bounds[0], bounds[1]])
    return rows


def cmd_bench(args) -> int:
    path = Path(args.config)
    points = parse_grid(path.read_text(), str(path))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.parallel > 1:
        with ProcessPoolExecutor(args.parallel) as pool:
            results = list(pool.map(_bench_point, points))
    else:
        results = []
        for i, p in enumerate(points, 1):
            print(f"[{i}/{len(points)}] n={p['n']} d={p['d']} k={p['k']} a={p['a']} g={p['g']} "
                  f"{p['dist']} {p['algo']} x{p['reps']}", file=sys.stderr)
            results.append(_bench_point(p))
    target = out_dir / "bench.csv"
    with target.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        for rows in results:
            writer.writerows(rows)
    print(f"wrote {sum(len(r) for r in results)} rows to {target}")
    return 0


# -- entry point -------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _add_query_flags(p: argparse.ArgumentParser):
    p.add_argument("left", help="left relation CSV")
    p.add_argument("right", help="right relation CSV")
    p.add_argument("--aggregate", action="store_true", help="combine aggregate components across legs")
    p.add_argument("--cond", default="eq", choices=[c.value for c in Condition])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksjq", description="k-dominant skyline join queries")
    parser.add_argument("--backend", choices=sorted(kernels.AVAILABLE), help="kernel backend")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic relation")
    g.add_argument("--n", type=_nonnegative, required=True)
    g.add_argument("--d", type=_positive, required=True)
    g.add_argument("--a", type=_nonnegative, default=0)
    g.add_argument("--g", type=_positive, default=1)
    g.add_argument("--dist", default="independent")
    g.add_argument("--seed", type=_nonnegative, default=0)
    g.add_argument("--agg-fn", default="SUM", choices=["SUM", "MIN", "sum", "min"])
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="evaluate a query")
    _add_query_flags(r)
    r.add_argument("--k", type=_positive, required=True)
    r.add_argument("--algo", default="grouping", choices=ALGORITHMS)
    r.add_argument("--out", help="result CSV (default: stdout)")
    r.set_defaults(func=cmd_run)

    f = sub.add_parser("find-k", help="choose k for a target answer size")
    _add_query_flags(f)
    f.add_argument("--delta", type=_nonnegative, required=True)
    f.add_argument("--method", default="binary", choices=METHODS)
    f.add_argument("--mode", default="at-least", choices=["at-least", "at-most"])
    f.add_argument("--algo", default="grouping", choices=ALGORITHMS)
    f.set_defaults(func=cmd_find_k)

    b = sub.add_parser("bench", help="run a parameter sweep")
    b.add_argument("config", help="grid file of 'key = v1, v2' lines")
    b.add_argument("--out", required=True, help="output directory")
    b.add_argument("--parallel", type=_positive, default=1, help="worker processes (default 1)")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        kernels.set_backend(args.backend)
    if getattr(args, "mode", None) == "at-least" and getattr(args, "delta", 1) < 1:
        parser.error("--delta must be >= 1 in at-least mode")
    try:
        return args.func(args)
    except (UsageError, CSVFormatError, ValueError, OSError) as exc:
        print(f"ksjq {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
