"""Compare the compiled kernels with the numpy fallback.

Usage: python benchmarks/bench_backends.py [--n 400] [--reps 3]

Each workload runs under both backends on the same inputs; the script
checks that the outputs agree and prints median wall times and the speedup.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from ksjq import kernels
from ksjq.core import skyline_mask
from ksjq.data import DatasetSpec, generate
from ksjq.engine import QueryConfig, run_query


def _time(fn, reps: int):
    out, times = None, []
    for _ in range(reps):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return out, statistics.median(times) * 1e3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=400, help="tuples per relation")
    parser.add_argument("--reps", type=int, default=3)
    args = parser.parse_args(argv)
    if "compiled" not in kernels.AVAILABLE:
        print("compiled extension not built; only the numpy fallback is available")
        return 1

    r1 = generate(DatasetSpec(args.n, 7, 2, 10, "independent", 1))
    r2 = generate(DatasetSpec(args.n, 7, 2, 10, "independent", 2))
    X = np.random.default_rng(0).random((args.n * 10, 6))
    workloads = {
        "skyline (n*10 x 6, k=5)": lambda: skyline_mask(X, 5).tolist(),
        "grouping query (k=11, a=2)": lambda: run_query(r1, r2, QueryConfig(11, True)).result,
        "dominator query (k=11, a=2)": lambda: run_query(r1, r2, QueryConfig(11, True, algorithm="dominator")).result,
        "naive query (k=11, a=2)": lambda: run_query(r1, r2, QueryConfig(11, True, algorithm="naive")).result,
    }
    print(f"{'workload':32s} {'compiled ms':>12s} {'python ms':>12s} {'speedup':>8s}")
    for name, fn in workloads.items():
        with kernels.backend("compiled"):
            fast, t_fast = _time(fn, args.reps)
        with kernels.backend("python"):
            slow, t_slow = _time(fn, args.reps)
        if fast != slow:
            print(f"{name}: backends disagree")
            return 1
        print(f"{name:32s} {t_fast:12.1f} {t_slow:12.1f} {t_slow / t_fast:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
