"""Join construction and the k-dominant skyline join algorithms.

All algorithms work on row positions and only translate to tuple ids when
building the answer. Joined vectors are laid out as (left skyline, right
skyline) in plain mode and (left locals, right locals, aggregates) in
aggregate mode.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .core import skyline_mask
from .partition import (NN, SN, SS, Condition, FIRST, SECOND, _LABEL_NAMES, augment_positions,
                        compat_mode, group_codes, label_codes)
from .relation import Relation, Schema, Tuple

NAIVE, GROUPING, DOMINATOR, CARTESIAN = "naive", "grouping", "dominator", "cartesian"
ALGORITHMS = (NAIVE, GROUPING, DOMINATOR, CARTESIAN)
CATEGORIES = tuple(f"{x}-{y}" for x in _LABEL_NAMES for y in _LABEL_NAMES)
TIMING_KEYS = ("group_ms", "join_ms", "dominator_ms", "rest_ms")
_AGG_KIND = {"SUM": 0, "MIN": 1}


@dataclass(frozen=True)
class QueryConfig:
    k: int
    aggregate: bool = False
    condition: Condition = Condition.EQ
    algorithm: str = GROUPING

    def __post_init__(self):
        object.__setattr__(self, "condition", Condition.parse(self.condition))
        algo = str(self.algorithm).lower()
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        object.__setattr__(self, "algorithm", algo)
        if isinstance(self.k, bool) or int(self.k) != self.k:
            raise ValueError(f"k must be an integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))


@dataclass(frozen=True)
class Budgets:
    """Dimensions and per-relation thresholds of one query.

    ``k_ss`` (k - d_other) decides SS and bounds target and dominator sets.
    ``k_nn`` (k - l_other) decides NN; a tuple dominated inside its group
    with that many better-or-equal positions keeps the other side's locals
    equal and its aggregates no worse. ``strict`` marks the positions whose
    strict improvement survives aggregation: MIN can absorb it, SUM cannot.
    """

    k: int
    l1: int
    l2: int
    a: int
    aggkind: np.ndarray
    k_ss1: int
    k_ss2: int
    k_nn1: int
    k_nn2: int
    strict1: np.ndarray
    strict2: np.ndarray

    @property
    def d1(self) -> int:
        return self.l1 + self.a

    @property
    def d2(self) -> int:
        return self.l2 + self.a

    @property
    def width(self) -> int:
        return self.l1 + self.l2 + self.a

    @property
    def k_min(self) -> int:
        return max(self.d1, self.d2) + 1


def dimensions(s1: Schema, s2: Schema, aggregate: bool) -> tuple[int, int, int]:
    """(l1, l2, a) as the joined relation sees them."""
    if not aggregate:
        return s1.d, s2.d, 0
    if s1.a != s2.a or s1.agg_fns != s2.agg_fns:
        raise ValueError(f"aggregate schemas differ: {s1.a} components {s1.agg_fns} "
                         f"vs {s2.a} components {s2.agg_fns}")
    return s1.l, s2.l, s1.a


def k_range(s1: Schema, s2: Schema, aggregate: bool) -> tuple[int, int]:
    """Inclusive range of valid k."""
    l1, l2, a = dimensions(s1, s2, aggregate)
    return max(l1, l2) + a + 1, l1 + l2 + a


def budgets(s1: Schema, s2: Schema, k: int, aggregate: bool = False) -> Budgets:
    l1, l2, a = dimensions(s1, s2, aggregate)
    lo, hi = k_range(s1, s2, aggregate)
    if not lo <= k <= hi:
        raise ValueError(f"k={k} outside the valid range {lo}..{hi}")
    fns = s1.agg_fns if a else ()
    aggkind = np.array([_AGG_KIND[f] for f in fns], dtype=np.int8)
    strict_agg = (aggkind == 0).astype(np.uint8)
    strict1 = np.concatenate([np.ones(l1, dtype=np.uint8), strict_agg])
    strict2 = np.concatenate([np.ones(l2, dtype=np.uint8), strict_agg])
    d1, d2 = l1 + a, l2 + a
    return Budgets(k, l1, l2, a, aggkind, k - d2, k - d1, k - l2, k - l1, strict1, strict2)


class JoinedTuple(NamedTuple):
    left_id: object
    right_id: object
    sky: tuple


@dataclass
class SkylineAnswer:
    """Answer pairs in (left_id, right_id) order, with their joined vectors."""

    result: list
    vectors: np.ndarray
    k: int
    algorithm: str
    k_prime: tuple = (None, None)
    category_counts: dict | None = None
    timings: dict = field(default_factory=lambda: dict.fromkeys(TIMING_KEYS, 0.0))

    @property
    def pairs(self) -> set:
        return set(self.result)

    @property
    def total_ms(self) -> float:
        return sum(self.timings.values())

    def __len__(self) -> int:
        return len(self.result)

    def joined(self) -> list[JoinedTuple]:
        return [JoinedTuple(l, r, tuple(v)) for (l, r), v in zip(self.result, self.vectors.tolist())]

    def bounds(self) -> tuple[int, int]:
        if self.category_counts is None:
            raise ValueError("category counts were not computed by this algorithm")
        return count_interval(self.category_counts)


def count_interval(counts: dict) -> tuple[int, int]:
    lb = counts["SS-SS"]
    return lb, lb + counts["SS-SN"] + counts["SN-SS"] + counts["SN-SN"]


class _Clock:
    def __init__(self):
        self.start = time.perf_counter()
        self.parts = dict.fromkeys(TIMING_KEYS, 0.0)
        self._mark = None

    def begin(self):
        self._mark = time.perf_counter()

    def charge(self, key: str):
        self.parts[key] += (time.perf_counter() - self._mark) * 1e3

    def finish(self) -> dict:
        total = (time.perf_counter() - self.start) * 1e3
        named = sum(v for k, v in self.parts.items() if k != "rest_ms")
        self.parts["rest_ms"] = max(total - named, 0.0)
        return self.parts


# -- join enumeration --------------------------------------------------------

def _compatible(x, y, cond: Condition) -> bool:
    if cond is Condition.EQ:
        return x == y
    x, y = float(x[0]), float(y[0])
    return {Condition.LT: x < y, Condition.LEQ: x <= y, Condition.GT: x > y,
            Condition.GEQ: x >= y}[cond]


def _aggregate(left: np.ndarray, right: np.ndarray, aggkind: np.ndarray) -> np.ndarray:
    return np.where(aggkind == 0, left + right, np.minimum(left, right))


def join_pair(u: Tuple, v: Tuple, schemas: tuple[Schema, Schema], aggregate: bool = False,
              condition=Condition.EQ) -> JoinedTuple:
    s1, s2 = schemas
    cond = Condition.parse(condition)
    if not _compatible(u.join_key, v.join_key, cond):
        raise ValueError(f"tuples {u.id!r} and {v.id!r} do not satisfy the join condition {cond.value}")
    l1, l2, a = dimensions(s1, s2, aggregate)
    us, vs = np.asarray(u.sky, dtype=float), np.asarray(v.sky, dtype=float)
    if not a:
        return JoinedTuple(u.id, v.id, tuple(np.concatenate([us, vs]).tolist()))
    kinds = np.array([_AGG_KIND[f] for f in s1.agg_fns], dtype=np.int8)
    agg = _aggregate(us[l1:], vs[l2:], kinds)
    return JoinedTuple(u.id, v.id, tuple(np.concatenate([us[:l1], vs[:l2], agg]).tolist()))


def join_values(r1: Relation, r2: Relation, cond: Condition) -> tuple[np.ndarray, np.ndarray]:
    """Numeric join value per tuple; equality keys get codes shared by both sides."""
    if cond is Condition.EQ:
        book: dict = {}
        return group_codes(r1, book), group_codes(r2, book)
    return r1.join_values(), r2.join_values()


def _ranges(sorted_keys: np.ndarray, x: np.ndarray, cond: Condition) -> tuple[np.ndarray, np.ndarray]:
    """Slice of ``sorted_keys`` holding the right values that join each left value."""
    n = len(sorted_keys)
    if cond is Condition.EQ:
        return np.searchsorted(sorted_keys, x, "left"), np.searchsorted(sorted_keys, x, "right")
    if cond is Condition.LT:     # v > u
        return np.searchsorted(sorted_keys, x, "right"), np.full(len(x), n)
    if cond is Condition.LEQ:    # v >= u
        return np.searchsorted(sorted_keys, x, "left"), np.full(len(x), n)
    if cond is Condition.GT:     # v < u
        return np.zeros(len(x), dtype=np.int64), np.searchsorted(sorted_keys, x, "left")
    return np.zeros(len(x), dtype=np.int64), np.searchsorted(sorted_keys, x, "right")


def join_positions(jv1: np.ndarray, jv2: np.ndarray, cond: Condition,
                   left=None, right=None) -> tuple[np.ndarray, np.ndarray]:
    """All joining (left, right) position pairs, left-major.

    Equality is a hash join on the shared codes; the other conditions sweep
    the right side sorted by join value.
    """
    left = np.arange(len(jv1)) if left is None else np.asarray(left, dtype=np.int64)
    right = np.arange(len(jv2)) if right is None else np.asarray(right, dtype=np.int64)
    if left.size == 0 or right.size == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    order = right[np.argsort(jv2[right], kind="stable")]
    lo, hi = _ranges(jv2[order], jv1[left], cond)
    counts = (hi - lo).astype(np.int64)
    total = int(counts.sum())
    pu = np.repeat(left, counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts) + np.repeat(lo, counts)
    pv = order[offsets]
    # within one left tuple keep right positions ascending for stable output
    key = np.lexsort((pv, pu))
    return pu[key], pv[key]


def materialize(X1: np.ndarray, X2: np.ndarray, bud: Budgets, pu: np.ndarray, pv: np.ndarray) -> np.ndarray:
    parts = [X1[pu, :bud.l1], X2[pv, :bud.l2]]
    if bud.a:
        parts.append(_aggregate(X1[pu, bud.l1:], X2[pv, bud.l2:], bud.aggkind))
    return np.ascontiguousarray(np.concatenate(parts, axis=1)) if len(pu) else np.empty((0, bud.width))


def materialize_join(r1: Relation, r2: Relation, config: QueryConfig) -> list[JoinedTuple]:
    bud = budgets(r1.schema, r2.schema, config.k, config.aggregate)
    jv1, jv2 = join_values(r1, r2, config.condition)
    pu, pv = join_positions(jv1, jv2, config.condition)
    X = materialize(r1.sky, r2.sky, bud, pu, pv)
    return [JoinedTuple(r1.ids[u], r2.ids[v], tuple(x)) for u, v, x in zip(pu.tolist(), pv.tolist(), X.tolist())]


# -- shared pieces -----------------------------------------------------------

def _id_key(value):
    return (0, value, "") if isinstance(value, (int, float)) else (1, 0, str(value))


def _answer(r1: Relation, r2: Relation, bud: Budgets, pu, pv, algorithm, counts, clock) -> SkylineAnswer:
    pu = np.asarray(pu, dtype=np.int64)
    pv = np.asarray(pv, dtype=np.int64)
    ids = [(r1.ids[u], r2.ids[v]) for u, v in zip(pu.tolist(), pv.tolist())]
    order = sorted(range(len(ids)), key=lambda i: (_id_key(ids[i][0]), _id_key(ids[i][1])))
    idx = np.asarray(order, dtype=np.int64)
    vectors = materialize(r1.sky, r2.sky, bud, pu[idx], pv[idx]) if len(idx) else np.empty((0, bud.width))
    result = [ids[i] for i in order]
    return SkylineAnswer(result, vectors, bud.k, algorithm, (bud.k_ss1, bud.k_ss2), counts, clock.finish())


class _Prepared(NamedTuple):
    bud: Budgets
    cond: Condition
    X1: np.ndarray
    X2: np.ndarray
    jv1: np.ndarray
    jv2: np.ndarray


def _prepare(r1: Relation, r2: Relation, config: QueryConfig) -> _Prepared:
    bud = budgets(r1.schema, r2.schema, config.k, config.aggregate)
    jv1, jv2 = join_values(r1, r2, config.condition)
    return _Prepared(bud, config.condition, r1.sky, r2.sky, jv1, jv2)


def _labels(q: _Prepared, cache: dict | None) -> tuple[np.ndarray, np.ndarray]:
    """Label codes for both relations, memoised on the thresholds."""
    b = q.bud
    out = []
    for side, X, jv, k_ss, k_nn, strict in ((FIRST, q.X1, q.jv1, b.k_ss1, b.k_nn1, b.strict1),
                                            (SECOND, q.X2, q.jv2, b.k_ss2, b.k_nn2, b.strict2)):
        key = (side, k_ss, k_nn)
        if cache is not None and key in cache:
            out.append(cache[key])
            continue
        mode = compat_mode(q.cond, side).code
        codes = label_codes(X, jv, mode, k_ss, k_nn, strict) if len(X) else np.zeros(0, dtype=np.int8)
        if cache is not None:
            cache[key] = codes
        out.append(codes)
    return out[0], out[1]


def category_counts(lab1: np.ndarray, lab2: np.ndarray, jv1: np.ndarray, jv2: np.ndarray,
                    cond: Condition) -> dict:
    """Joined-pair count of each of the nine label combinations, without joining."""
    counts = {}
    for j, right_label in enumerate(_LABEL_NAMES):
        keys = np.sort(jv2[lab2 == j])
        for i, left_label in enumerate(_LABEL_NAMES):
            x = jv1[lab1 == i]
            lo, hi = _ranges(keys, x, cond)
            counts[f"{left_label}-{right_label}"] = int((hi - lo).sum())
    return {c: counts[c] for c in CATEGORIES}


def _segments(n: int, owner_lists: list[tuple[np.ndarray, np.ndarray]], jv: np.ndarray):
    """CSR target lists: owner_lists holds (owners, targets) groups.

    Every owner position gets ``targets`` sorted by join value; positions
    not listed get an empty slice.
    """
    start = np.zeros(n, dtype=np.int64)
    end = np.zeros(n, dtype=np.int64)
    chunks = []
    offset = 0
    for owners, targets in owner_lists:
        targets = np.asarray(targets, dtype=np.int64)
        targets = targets[np.argsort(jv[targets], kind="stable")]
        start[owners] = offset
        end[owners] = offset + len(targets)
        chunks.append(targets)
        offset += len(targets)
    idx = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
    return start, end, np.ascontiguousarray(idx, dtype=np.int64)


def _run_check(q: _Prepared, cu, cv, left, right) -> np.ndarray:
    """Survivor mask for candidates (cu, cv) against per-position target lists."""
    cu = np.asarray(cu, dtype=np.int64)
    cv = np.asarray(cv, dtype=np.int64)
    if cu.size == 0:
        return np.zeros(0, dtype=bool)
    order = np.lexsort((cu, cv))  # group by right position to reuse its counts
    b = q.bud
    keep = kernels.check_candidates(np.ascontiguousarray(cu[order]), np.ascontiguousarray(cv[order]),
                                    q.X1, q.X2, b.l1, b.l2, b.aggkind, q.jv1, q.jv2, q.cond.code,
                                    *left, *right, b.k)
    out = np.empty(cu.size, dtype=bool)
    out[order] = np.asarray(keep, dtype=bool)
    return out


def check_target(r1: Relation, r2: Relation, candidates, targets, config: QueryConfig) -> set:
    """Candidates not k-dominated by any joining pair drawn from ``targets``.

    ``targets`` is ``(left ids, right ids)``; pairs are enumerated lazily per
    candidate and never materialised.
    """
    candidates = list(candidates)
    if not candidates:
        return set()
    q = _prepare(r1, r2, config)
    left_ids, right_ids = targets
    cu = np.array([r1.position(u) for u, _ in candidates], dtype=np.int64)
    cv = np.array([r2.position(v) for _, v in candidates], dtype=np.int64)
    for u, v in zip(cu.tolist(), cv.tolist()):
        if not _compatible(r1.keys[u], r2.keys[v], q.cond):
            raise ValueError(f"candidate ({r1.ids[u]!r}, {r2.ids[v]!r}) does not join")
    left = _segments(len(r1), [(np.unique(cu), r1.positions(left_ids))], q.jv1)
    right = _segments(len(r2), [(np.unique(cv), r2.positions(right_ids))], q.jv2)
    keep = _run_check(q, cu, cv, left, right)
    return {(r1.ids[u], r2.ids[v]) for u, v, k in zip(cu.tolist(), cv.tolist(), keep) if k}


# -- algorithms --------------------------------------------------------------

def ksjq_naive(r1: Relation, r2: Relation, config: QueryConfig) -> SkylineAnswer:
    """Materialise the whole join, then take its k-dominant skyline."""
    clock = _Clock()
    q = _prepare(r1, r2, config)
    clock.begin()
    pu, pv = join_positions(q.jv1, q.jv2, q.cond)
    X = materialize(q.X1, q.X2, q.bud, pu, pv)
    clock.charge("join_ms")
    keep = skyline_mask(X, q.bud.k) if len(X) else np.zeros(0, dtype=bool)
    return _answer(r1, r2, q.bud, pu[keep], pv[keep], NAIVE, None, clock)


def _candidates(q: _Prepared, lab1, lab2):
    """Joining pairs with no NN side, split into the SS-SS yes-set and the rest."""
    pu, pv = join_positions(q.jv1, q.jv2, q.cond, np.flatnonzero(lab1 != 2), np.flatnonzero(lab2 != 2))
    yes = (lab1[pu] == 0) & (lab2[pv] == 0)
    return pu[yes], pv[yes], pu[~yes], pv[~yes]


def ksjq_grouping(r1: Relation, r2: Relation, config: QueryConfig, *, cache: dict | None = None) -> SkylineAnswer:
    """Classify, accept SS-SS, drop anything with an NN side, check the rest.

    Targets: SS1-SN2 against A1 x R2, SN1-SS2 against R1 x A2 and SN1-SN2
    against R1 x R2, where A is the SS set augmented with tuples sharing
    k_ss equal values. Because SS1 and SN1 are disjoint one pass over all
    candidates serves the three checks.
    """
    clock = _Clock()
    q = _prepare(r1, r2, config)
    b = q.bud
    clock.begin()
    lab1, lab2 = _labels(q, cache)
    ss1, sn1 = np.flatnonzero(lab1 == 0), np.flatnonzero(lab1 == 1)
    ss2, sn2 = np.flatnonzero(lab2 == 0), np.flatnonzero(lab2 == 1)
    a1 = augment_positions(q.X1, ss1, b.k_ss1) if ss1.size else ss1
    a2 = augment_positions(q.X2, ss2, b.k_ss2) if ss2.size else ss2
    clock.charge("group_ms")

    clock.begin()
    counts = category_counts(lab1, lab2, q.jv1, q.jv2, q.cond)
    yu, yv, cu, cv = _candidates(q, lab1, lab2)
    clock.charge("join_ms")

    every1, every2 = np.arange(len(r1)), np.arange(len(r2))
    left = _segments(len(r1), [(ss1, a1), (sn1, every1)], q.jv1)
    right = _segments(len(r2), [(ss2, a2), (sn2, every2)], q.jv2)
    keep = _run_check(q, cu, cv, left, right)
    pu = np.concatenate([yu, cu[keep]])
    pv = np.concatenate([yv, cv[keep]])
    return _answer(r1, r2, b, pu, pv, GROUPING, counts, clock)


def _dominator_lists(X: np.ndarray, owners: np.ndarray, k_prime: int, jv: np.ndarray):
    start = np.zeros(X.shape[0], dtype=np.int64)
    end = np.zeros(X.shape[0], dtype=np.int64)
    chunks = []
    offset = 0
    for p in owners.tolist():
        dom = np.flatnonzero(np.asarray(kernels.leq_at_least(X, X[p], k_prime), dtype=bool))
        dom = dom[np.argsort(jv[dom], kind="stable")]
        start[p], end[p] = offset, offset + len(dom)
        chunks.append(dom)
        offset += len(dom)
    idx = np.concatenate(chunks).astype(np.int64) if chunks else np.empty(0, dtype=np.int64)
    return start, end, np.ascontiguousarray(idx)


def ksjq_dominator(r1: Relation, r2: Relation, config: QueryConfig, *, cache: dict | None = None) -> SkylineAnswer:
    """Like grouping, but each candidate u-v is checked only against dom(u) x dom(v).

    dom(u) is every tuple better-or-equal to u on at least k_ss positions:
    its k_ss-dominators plus the tuples sharing k_ss values with it.
    """
    clock = _Clock()
    q = _prepare(r1, r2, config)
    b = q.bud
    clock.begin()
    lab1, lab2 = _labels(q, cache)
    clock.charge("group_ms")

    clock.begin()
    left = _dominator_lists(q.X1, np.flatnonzero(lab1 != 2), b.k_ss1, q.jv1)
    right = _dominator_lists(q.X2, np.flatnonzero(lab2 != 2), b.k_ss2, q.jv2)
    clock.charge("dominator_ms")

    clock.begin()
    counts = category_counts(lab1, lab2, q.jv1, q.jv2, q.cond)
    yu, yv, cu, cv = _candidates(q, lab1, lab2)
    clock.charge("join_ms")

    keep = _run_check(q, cu, cv, left, right)
    pu = np.concatenate([yu, cu[keep]])
    pv = np.concatenate([yv, cv[keep]])
    return _answer(r1, r2, b, pu, pv, DOMINATOR, counts, clock)


def is_cartesian(r1: Relation, r2: Relation) -> bool:
    keys = set(r1.keys) | set(r2.keys)
    return len(keys) <= 1


def ksjq_cartesian(r1: Relation, r2: Relation, config: QueryConfig, *, cache: dict | None = None) -> SkylineAnswer:
    """Every pair joins: the answer is SS1 x SS2.

    One group per relation leaves no room for SN under a single threshold.
    Aggregate queries split the thresholds, so SN tuples can appear there;
    they are checked against the full product like grouping does.
    """
    if not is_cartesian(r1, r2):
        raise ValueError("Cartesian evaluation needs a single join key across both relations")
    if config.condition is not Condition.EQ:
        raise ValueError("Cartesian evaluation uses the equality condition on the shared key")
    clock = _Clock()
    q = _prepare(r1, r2, config)
    b = q.bud
    clock.begin()
    lab1, lab2 = _labels(q, cache)
    ss1, sn1 = np.flatnonzero(lab1 == 0), np.flatnonzero(lab1 == 1)
    ss2, sn2 = np.flatnonzero(lab2 == 0), np.flatnonzero(lab2 == 1)
    clock.charge("group_ms")

    clock.begin()
    counts = category_counts(lab1, lab2, q.jv1, q.jv2, q.cond)
    yu, yv = np.repeat(ss1, len(ss2)), np.tile(ss2, len(ss1))
    clock.charge("join_ms")
    if sn1.size or sn2.size:
        a1 = augment_positions(q.X1, ss1, b.k_ss1) if ss1.size else ss1
        a2 = augment_positions(q.X2, ss2, b.k_ss2) if ss2.size else ss2
        _, _, cu, cv = _candidates(q, lab1, lab2)
        left = _segments(len(r1), [(ss1, a1), (sn1, np.arange(len(r1)))], q.jv1)
        right = _segments(len(r2), [(ss2, a2), (sn2, np.arange(len(r2)))], q.jv2)
        keep = _run_check(q, cu, cv, left, right)
        yu, yv = np.concatenate([yu, cu[keep]]), np.concatenate([yv, cv[keep]])
    return _answer(r1, r2, b, yu, yv, CARTESIAN, counts, clock)


_DISPATCH = {NAIVE: ksjq_naive, GROUPING: ksjq_grouping, DOMINATOR: ksjq_dominator,
             CARTESIAN: ksjq_cartesian}


def run_query(r1: Relation, r2: Relation, config: QueryConfig, *, cache: dict | None = None) -> SkylineAnswer:
    fn = _DISPATCH[config.algorithm]
    return fn(r1, r2, config) if fn is ksjq_naive else fn(r1, r2, config, cache=cache)


def query_labels(r1: Relation, r2: Relation, config: QueryConfig,
                 cache: dict | None = None) -> tuple[dict, dict]:
    """SS/SN/NN label per tuple id for both relations under ``config``."""
    q = _prepare(r1, r2, config)
    lab1, lab2 = _labels(q, cache)
    return ({t: _LABEL_NAMES[c] for t, c in zip(r1.ids, lab1.tolist())},
            {t: _LABEL_NAMES[c] for t, c in zip(r2.ids, lab2.tolist())})


def count_bounds_for(r1: Relation, r2: Relation, config: QueryConfig,
                     cache: dict | None = None) -> tuple[int, int]:
    q = _prepare(r1, r2, config)
    lab1, lab2 = _labels(q, cache)
    return count_interval(category_counts(lab1, lab2, q.jv1, q.jv2, q.cond))


__all__ = ["ALGORITHMS", "CATEGORIES", "Budgets", "JoinedTuple", "QueryConfig", "SkylineAnswer",
           "budgets", "category_counts", "check_target", "count_bounds_for", "dimensions",
           "is_cartesian", "join_pair", "join_positions", "join_values", "k_range", "ksjq_cartesian",
           "ksjq_dominator", "ksjq_grouping", "ksjq_naive", "materialize", "materialize_join",
           "query_labels", "run_query", "SS", "SN", "NN"]
