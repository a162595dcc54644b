"""Choosing k from a target answer size delta.

Answer sizes never shrink as k grows, so the smallest k reaching delta can be
found by a linear or a binary scan. The yes-set size and the yes + likely +
maybe size bracket the exact count and often settle a probe without running
a query.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .engine import GROUPING, QueryConfig, count_bounds_for, k_range, run_query
from .partition import Condition
from .relation import Relation

NAIVE, RANGE, BINARY = "naive", "range", "binary"
METHODS = (NAIVE, RANGE, BINARY)


@dataclass(frozen=True)
class Probe:
    k: int
    lb: int | None
    ub: int | None
    exact: int | None  # None: settled by a bound


@dataclass
class KSearchResult:
    k: int
    delta: int
    method: str
    skyline_count: int | None = None
    trace: list = field(default_factory=list)
    satisfied: bool = True  # False: no k reached delta and the maximum was returned

    @property
    def probes(self) -> int:
        return len(self.trace)


class _Search:
    """One search invocation: fixed inputs plus a memo of classifications."""

    def __init__(self, r1: Relation, r2: Relation, aggregate: bool, condition, algorithm: str):
        self.r1, self.r2 = r1, r2
        self.aggregate = aggregate
        self.condition = Condition.parse(condition)
        self.algorithm = algorithm
        self.k_min, self.k_max = k_range(r1.schema, r2.schema, aggregate)
        self.cache: dict = {}

    def config(self, k: int) -> QueryConfig:
        return QueryConfig(k, self.aggregate, self.condition, self.algorithm)

    def bounds(self, k: int) -> tuple[int, int]:
        return count_bounds_for(self.r1, self.r2, self.config(k), self.cache)

    def exact(self, k: int) -> int:
        return len(run_query(self.r1, self.r2, self.config(k), cache=self.cache))


def _check_delta(delta: int, minimum: int = 1):
    if isinstance(delta, bool) or int(delta) != delta or delta < minimum:
        raise ValueError(f"delta must be an integer >= {minimum}, got {delta!r}")


def count_bounds(r1: Relation, r2: Relation, k: int, aggregate: bool = False,
                 condition=Condition.EQ) -> tuple[int, int]:
    """(yes-set size, yes + likely + maybe size) for k, from labels alone."""
    return count_bounds_for(r1, r2, QueryConfig(k, aggregate, condition))


def find_k_naive(r1: Relation, r2: Relation, delta: int, *, aggregate: bool = False,
                 condition=Condition.EQ, algorithm: str = GROUPING) -> KSearchResult:
    _check_delta(delta)
    s = _Search(r1, r2, aggregate, condition, algorithm)
    trace = []
    for k in range(s.k_min, s.k_max + 1):
        count = s.exact(k)
        trace.append(Probe(k, None, None, count))
        if count >= delta:
            return KSearchResult(k, delta, NAIVE, count, trace)
    return KSearchResult(s.k_max, delta, NAIVE, trace[-1].exact, trace, satisfied=False)


def find_k_range(r1: Relation, r2: Relation, delta: int, *, aggregate: bool = False,
                 condition=Condition.EQ, algorithm: str = GROUPING) -> KSearchResult:
    _check_delta(delta)
    s = _Search(r1, r2, aggregate, condition, algorithm)
    trace = []
    for k in range(s.k_min, s.k_max + 1):
        lb, ub = s.bounds(k)
        if lb >= delta:
            trace.append(Probe(k, lb, ub, None))
            return KSearchResult(k, delta, RANGE, None, trace)
        if ub < delta:
            trace.append(Probe(k, lb, ub, None))
            continue
        count = s.exact(k)
        trace.append(Probe(k, lb, ub, count))
        if count >= delta:
            return KSearchResult(k, delta, RANGE, count, trace)
    last = trace[-1]
    return KSearchResult(s.k_max, delta, RANGE, last.exact, trace, satisfied=False)


def _binary(s: _Search, delta: int) -> KSearchResult:
    lo, hi = s.k_min, s.k_max
    cur, cur_count, found = s.k_max, None, False
    trace = []
    # lo <= hi: with a strict test the last remaining value would never be probed
    while lo <= hi:
        k = (lo + hi) // 2
        lb, ub = s.bounds(k)
        exact = None
        if lb >= delta:
            ok = True
        elif ub < delta:
            ok = False
        else:
            exact = s.exact(k)
            ok = exact >= delta
        trace.append(Probe(k, lb, ub, exact))
        if ok:
            cur, cur_count, found = k, exact, True
            hi = k - 1
        else:
            lo = k + 1
        # the early exit needs cur to be a probed value, not the untested default
        if found and lo >= cur:
            break
    if not found:
        cur_count = trace[-1].exact if trace and trace[-1].k == cur else None
    return KSearchResult(cur, delta, BINARY, cur_count, trace, satisfied=found)


def find_k_binary(r1: Relation, r2: Relation, delta: int, *, aggregate: bool = False,
                  condition=Condition.EQ, algorithm: str = GROUPING) -> KSearchResult:
    _check_delta(delta)
    return _binary(_Search(r1, r2, aggregate, condition, algorithm), delta)


def max_binary_probes(k_min: int, k_max: int) -> int:
    return math.ceil(math.log2(k_max - k_min + 1)) + 1


def find_k_at_most(r1: Relation, r2: Relation, delta: int, *, aggregate: bool = False,
                   condition=Condition.EQ, algorithm: str = GROUPING) -> KSearchResult:
    """Largest k whose answer has at most delta pairs, derived from the at-least k*.

    k* - 1 in general; k* itself when k* is the minimum, when k* was the
    unsatisfied default, or when count(k*) equals delta. In the last case
    the count can stay at delta for larger k, so the scan continues upward
    while it does.
    """
    _check_delta(delta, minimum=0)
    s = _Search(r1, r2, aggregate, condition, algorithm)
    if delta == 0:
        # at-least search needs delta >= 1; count >= 0 holds at k_min
        star = KSearchResult(s.k_min, 0, BINARY, None, [], True)
    else:
        star = _binary(s, delta)
    trace = list(star.trace)
    if not star.satisfied:
        # even the maximum stays below delta, so it is the answer
        return KSearchResult(star.k, delta, BINARY, star.skyline_count, trace)
    count = star.skyline_count
    if count is None:
        count = s.exact(star.k)
        trace.append(Probe(star.k, None, None, count))
    if count > delta:
        k = star.k - 1 if star.k > s.k_min else s.k_min
        # the minimum with more than delta pairs: best effort, not satisfied
        ok = star.k > s.k_min
        return KSearchResult(k, delta, BINARY, None, trace, satisfied=ok)
    k = star.k
    while k < s.k_max:
        nxt = s.exact(k + 1)
        trace.append(Probe(k + 1, None, None, nxt))
        if nxt > delta:
            break
        k, count = k + 1, nxt
    return KSearchResult(k, delta, BINARY, count, trace)


_FINDERS = {NAIVE: find_k_naive, RANGE: find_k_range, BINARY: find_k_binary}


def find_k(r1: Relation, r2: Relation, delta: int, method: str = BINARY, **kw) -> KSearchResult:
    try:
        fn = _FINDERS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}") from None
    return fn(r1, r2, delta, **kw)
