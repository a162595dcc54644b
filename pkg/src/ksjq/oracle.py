"""Brute-force reference answers for tests.

Policy: this module stays dumb. It imports nothing from the engine, joins
with a double loop, and compares every joined vector with every other one.
The only shortcut is stopping a row's scan once a dominator is found, which
is the existential in the definition. Do not add pruning, bounds or labels.
"""

from __future__ import annotations

import numpy as np

from .relation import Relation

AT_LEAST, AT_MOST = "at-least", "at-most"
_ROWS = 128
_CHUNK = 1024


def _joins(x, y, cond: str) -> bool:
    if cond == "eq":
        return x == y
    a, b = float(x[0]), float(y[0])
    return {"lt": a < b, "leq": a <= b, "gt": a > b, "geq": a >= b}[cond]


def _cond_name(condition) -> str:
    name = getattr(condition, "value", condition)
    return str(name).lower()


def joined_relation(r1: Relation, r2: Relation, aggregate: bool = False, condition="eq"):
    """Every joining pair and its vector, by nested loops."""
    cond = _cond_name(condition)
    s1, s2 = r1.schema, r2.schema
    if aggregate:
        l1, l2, fns = s1.l, s2.l, s1.agg_fns
    else:
        l1, l2, fns = s1.d, s2.d, ()
    pairs, rows = [], []
    for u in r1:
        for v in r2:
            if not _joins(u.join_key, v.join_key, cond):
                continue
            row = list(u.sky[:l1]) + list(v.sky[:l2])
            for j, fn in enumerate(fns):
                x, y = u.sky[l1 + j], v.sky[l2 + j]
                row.append(x + y if fn == "SUM" else min(x, y))
            pairs.append((u.id, v.id))
            rows.append(row)
    return pairs, np.array(rows, dtype=np.float64).reshape(len(rows), l1 + l2 + len(fns))


def dominated_rows(X: np.ndarray, k: int) -> np.ndarray:
    """Rows some other row beats: >= k positions no worse, >= 1 strictly better.

    Every row is compared with every row, a block at a time; a row leaves
    its block once a dominator turns up.
    """
    n, d = X.shape
    cols = np.ascontiguousarray(X.T)
    out = np.zeros(n, dtype=bool)
    for start in range(0, n, _ROWS):
        alive = np.arange(start, min(start + _ROWS, n))
        for c in range(0, n, _CHUNK):
            width = min(_CHUNK, n - c)
            leq = np.zeros((alive.size, width), dtype=np.int16)
            lt = np.zeros((alive.size, width), dtype=bool)
            for p in range(d):
                other = cols[p, c:c + width][None, :]
                mine = X[alive, p][:, None]
                leq += other <= mine
                lt |= other < mine
            hit = ((leq >= k) & lt).any(axis=1)
            out[alive[hit]] = True
            alive = alive[~hit]
            if alive.size == 0:
                break
    return out


def oracle_ksjq(r1: Relation, r2: Relation, config) -> set:
    """Reference answer for ``config`` (needs .k, .aggregate, .condition)."""
    pairs, X = joined_relation(r1, r2, config.aggregate, config.condition)
    if not pairs:
        return set()
    dead = dominated_rows(X, config.k)
    return {p for p, gone in zip(pairs, dead) if not gone}


def pareto_skyline(X: np.ndarray) -> set:
    """Classical skyline: rows no other row matches-or-beats everywhere and beats somewhere."""
    X = np.asarray(X, dtype=np.float64)
    n, d = X.shape
    keep = set()
    for start in range(0, n, _ROWS):
        alive = np.arange(start, min(start + _ROWS, n))
        for c in range(0, n, _CHUNK):
            other = X[c:c + _CHUNK]
            weak = np.ones((alive.size, other.shape[0]), dtype=bool)
            strict = np.zeros_like(weak)
            for p in range(d):
                weak &= other[None, :, p] <= X[alive, p][:, None]
                strict |= other[None, :, p] < X[alive, p][:, None]
            alive = alive[~(weak & strict).any(axis=1)]
            if alive.size == 0:
                break
        keep.update(alive.tolist())
    return keep


def _k_bounds(r1: Relation, r2: Relation, aggregate: bool) -> tuple[int, int]:
    if aggregate:
        a = r1.schema.a
        return max(r1.schema.l, r2.schema.l) + a + 1, r1.schema.l + r2.schema.l + a
    return max(r1.schema.d, r2.schema.d) + 1, r1.schema.d + r2.schema.d


def oracle_counts(r1: Relation, r2: Relation, aggregate: bool = False, condition="eq") -> dict:
    """Exact answer size for every valid k."""
    pairs, X = joined_relation(r1, r2, aggregate, condition)
    lo, hi = _k_bounds(r1, r2, aggregate)
    if not pairs:
        return {k: 0 for k in range(lo, hi + 1)}
    return {k: int((~dominated_rows(X, k)).sum()) for k in range(lo, hi + 1)}


def select_k(counts: dict, delta: int, mode: str = AT_LEAST) -> int:
    """Pick k from a full count table.

    AT_LEAST: smallest k with count >= delta, else the largest k.
    AT_MOST: largest k with count <= delta, else the smallest k.
    """
    ks = sorted(counts)
    if mode == AT_LEAST:
        return next((k for k in ks if counts[k] >= delta), ks[-1])
    if mode == AT_MOST:
        fit = [k for k in ks if counts[k] <= delta]
        return fit[-1] if fit else ks[0]
    raise ValueError(f"mode must be {AT_LEAST!r} or {AT_MOST!r}")


def oracle_find_k(r1: Relation, r2: Relation, delta: int, mode: str = AT_LEAST, *,
                  aggregate: bool = False, condition="eq", counts: dict | None = None) -> int:
    if counts is None:
        counts = oracle_counts(r1, r2, aggregate, condition)
    return select_k(counts, delta, mode)
