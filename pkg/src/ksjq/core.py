"""k-dominance between skyline vectors and the baseline k-dominant skyline.

Lower values are preferred on every position. ``u`` k-dominates ``v`` when
``u`` is better-or-equal on at least ``k`` positions and strictly better on
at least one. The relation is neither transitive nor acyclic, so the
skyline routine always compares against the whole collection.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels


class DominanceCount(NamedTuple):
    leq_count: int
    lt_count: int


def _check_vector(values) -> tuple:
    vec = tuple(float(x) for x in values)
    if not all(math.isfinite(x) for x in vec):
        raise ValueError("skyline vectors must hold finite numbers")
    return vec


def dominance_counts(u: Sequence[float], v: Sequence[float]) -> DominanceCount:
    """Positions where ``u`` is better-or-equal, and strictly better, than ``v``."""
    u, v = _check_vector(u), _check_vector(v)
    if len(u) != len(v):
        raise ValueError(f"vector lengths differ: {len(u)} vs {len(v)}")
    leq = sum(1 for a, b in zip(u, v) if a <= b)
    lt = sum(1 for a, b in zip(u, v) if a < b)
    return DominanceCount(leq, lt)


def k_dominates(u: Sequence[float], v: Sequence[float], k: int) -> bool:
    counts = dominance_counts(u, v)
    if not 1 <= k <= len(u):
        raise ValueError(f"k={k} outside 1..{len(u)}")
    return counts.leq_count >= k and counts.lt_count >= 1


class ColumnIndex(NamedTuple):
    """Row indices sorted per column (``order[p]``) and the sorted values."""

    order: np.ndarray
    values: np.ndarray


def column_index(X: np.ndarray) -> ColumnIndex:
    """Per-column sort used to bound dominance scans.

    A row that k-dominates row i is <= row i on at least k columns, so it
    sits in the "<= X[i, p]" prefix of at least one of any d-k+1 columns.
    Scans only visit the union of the shortest such prefixes; the bound is a
    per-pair necessary condition and never relies on transitivity.
    """
    order = np.ascontiguousarray(np.argsort(X, axis=0, kind="stable").T.astype(np.int64))
    values = np.ascontiguousarray(np.take_along_axis(X.T, order, axis=1))
    return ColumnIndex(order, values)


def as_matrix(tuples) -> np.ndarray:
    X = np.asarray(tuples, dtype=np.float64)
    if X.ndim != 2:
        if X.size == 0:
            return np.empty((0, 0))
        raise ValueError("expected a list of equal-length vectors")
    if not np.all(np.isfinite(X)):
        raise ValueError("skyline vectors must hold finite numbers")
    return np.ascontiguousarray(X)


def skyline_mask(X: np.ndarray, k: int) -> np.ndarray:
    """Boolean mask of rows of ``X`` not k-dominated by any other row."""
    X = as_matrix(X)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    d = X.shape[1]
    if not 1 <= k <= d:
        raise ValueError(f"k={k} outside 1..{d}")
    return kernels.kdom_skyline(X, k, *column_index(X)).astype(bool)


def k_dominant_skyline(tuples, k: int) -> set[int]:
    """Indices of the vectors that no other vector k-dominates."""
    X = as_matrix(tuples)
    if X.shape[0] == 0:
        return set()
    return set(np.flatnonzero(skyline_mask(X, k)).tolist())
