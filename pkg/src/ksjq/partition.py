"""Join groups and the SS / SN / NN split of a base relation.

SS: not k'-dominated by any tuple of the relation.
SN: k'-dominated somewhere, but not by any tuple of its compatibility set.
NN: k'-dominated inside its compatibility set.

For an equality join the compatibility set is the tuple's join group. For a
single-attribute ``<``/``<=``/``>``/``>=`` join it is the set of tuples
guaranteed to join with every partner the tuple joins with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from . import kernels
from .core import as_matrix, column_index
from .relation import Relation

SS, SN, NN = "SS", "SN", "NN"
_LABEL_NAMES = (SS, SN, NN)


class Condition(str, Enum):
    EQ = "eq"
    LT = "lt"
    LEQ = "leq"
    GT = "gt"
    GEQ = "geq"

    @property
    def code(self) -> int:
        return _COND_CODES[self]

    @classmethod
    def parse(cls, value) -> "Condition":
        if isinstance(value, Condition):
            return value
        text = str(value).strip().lower()
        aliases = {"=": "eq", "==": "eq", "equality": "eq", "<": "lt", "<=": "leq",
                   ">": "gt", ">=": "geq"}
        try:
            return cls(aliases.get(text, text))
        except ValueError:
            raise ValueError(f"unsupported join condition {value!r}") from None


_COND_CODES = {Condition.EQ: kernels.C_EQ, Condition.LT: kernels.C_LT,
               Condition.LEQ: kernels.C_LEQ, Condition.GT: kernels.C_GT,
               Condition.GEQ: kernels.C_GEQ}
_FLIP = {Condition.EQ: Condition.EQ, Condition.LT: Condition.GT, Condition.LEQ: Condition.GEQ,
         Condition.GT: Condition.LT, Condition.GEQ: Condition.LEQ}

FIRST, SECOND = "first", "second"


@dataclass
class PartitionLabels:
    """Per-tuple labels for one relation.

    ``k_prime`` drives the SS test and ``k_nn`` the NN test; they differ only
    for aggregate queries (see :func:`ksjq.engine.budgets`).
    """

    k_prime: int
    labels: dict
    compat_semantics: Condition = Condition.EQ
    k_nn: int | None = None
    codes: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.k_nn is None:
            self.k_nn = self.k_prime

    def ids(self, label: str) -> set:
        return {t for t, lab in self.labels.items() if lab == label}

    @property
    def ss(self) -> set:
        return self.ids(SS)

    @property
    def sn(self) -> set:
        return self.ids(SN)

    @property
    def nn(self) -> set:
        return self.ids(NN)

    def counts(self) -> dict:
        return {lab: int(np.sum(self.codes == i)) for i, lab in enumerate(_LABEL_NAMES)}


def group_by_join_key(relation: Relation) -> Relation:
    """Return the relation with its join-key -> ids index populated."""
    relation.groups  # noqa: B018 - builds the cached index
    return relation


def group_codes(relation: Relation, codebook: dict | None = None) -> np.ndarray:
    """Integer code per tuple, equal exactly when join keys are equal."""
    book = {} if codebook is None else codebook
    out = np.empty(len(relation), dtype=np.float64)
    for p, key in enumerate(relation.keys):
        out[p] = book.setdefault(key, len(book))
    return out


def _check_budget(relation: Relation, k: int, what: str):
    d = relation.schema.d
    if not 1 <= k <= d:
        raise ValueError(f"{what}={k} outside 1..{d}")


def label_codes(X: np.ndarray, jv: np.ndarray, mode: int, k_prime: int,
                k_nn: int | None = None, strict_ok=None) -> np.ndarray:
    """Kernel-level labelling: 0 = SS, 1 = SN, 2 = NN per row of ``X``.

    ``strict_ok`` flags the positions whose strict improvement counts for
    the NN test; by default every position does.
    """
    X = as_matrix(X)
    n, d = X.shape
    if n == 0:
        return np.zeros(0, dtype=np.int8)
    k_nn = k_prime if k_nn is None else k_nn
    strict = np.ones(d, dtype=np.uint8) if strict_ok is None else np.asarray(strict_ok, dtype=np.uint8)
    jv = np.ascontiguousarray(jv, dtype=np.float64)
    by_jv = np.argsort(jv, kind="stable").astype(np.int64)
    return np.asarray(kernels.classify_labels(X, jv, by_jv, mode, k_prime, k_nn, strict,
                                              *column_index(X)), dtype=np.int8)


def _labels(relation: Relation, codes: np.ndarray, k_prime: int, cond: Condition,
            k_nn: int | None) -> PartitionLabels:
    names = {tid: _LABEL_NAMES[c] for tid, c in zip(relation.ids, codes.tolist())}
    return PartitionLabels(k_prime, names, cond, k_nn, codes)


def classify(relation: Relation, k_prime: int, *, k_nn: int | None = None,
             strict_ok=None) -> PartitionLabels:
    """SS/SN/NN labels with equality join groups as compatibility sets."""
    _check_budget(relation, k_prime, "k_prime")
    if k_nn is not None:
        _check_budget(relation, k_nn, "k_nn")
    codes = label_codes(relation.sky, group_codes(relation), kernels.C_EQ, k_prime, k_nn, strict_ok)
    return _labels(relation, codes, k_prime, Condition.EQ, k_nn)


def compat_mode(cond, side: str) -> Condition:
    """Comparison selecting a tuple's compatibility set under ``cond``.

    For the left operand of ``u.x < v.y`` the set of ``u'`` is
    ``{u : u.x < u'.x}``: every right partner of ``u'`` also joins ``u``.
    The right operand mirrors the comparison.
    """
    cond = Condition.parse(cond)
    if side not in (FIRST, SECOND):
        raise ValueError(f"side must be {FIRST!r} or {SECOND!r}")
    return cond if side == FIRST else _FLIP[cond]


def classify_nonequality(relation: Relation, k_prime: int, cond, side: str = FIRST, *,
                         k_nn: int | None = None, strict_ok=None) -> PartitionLabels:
    """SS/SN/NN labels for a single-attribute non-equality join."""
    cond = Condition.parse(cond)
    if cond is Condition.EQ:
        raise ValueError("use classify() for equality joins")
    _check_budget(relation, k_prime, "k_prime")
    if k_nn is not None:
        _check_budget(relation, k_nn, "k_nn")
    mode = compat_mode(cond, side)
    codes = label_codes(relation.sky, relation.join_values(), mode.code, k_prime, k_nn, strict_ok)
    return _labels(relation, codes, k_prime, cond, k_nn)


def shares_positions(X: np.ndarray, x: np.ndarray, k_prime: int) -> np.ndarray:
    """Mask of rows equal to ``x`` on at least ``k_prime`` positions."""
    return (X == x).sum(axis=1) >= k_prime


def augment_positions(X: np.ndarray, seeds, k_prime: int) -> np.ndarray:
    seeds = np.asarray(sorted(seeds), dtype=np.int64)
    keep = np.zeros(X.shape[0], dtype=bool)
    keep[seeds] = True
    for s in seeds:
        keep |= shares_positions(X, X[s], k_prime)
    return np.flatnonzero(keep)


def augment(relation: Relation, ss_ids, k_prime: int) -> set:
    """``ss_ids`` plus every tuple equal to one of them on >= k_prime positions."""
    _check_budget(relation, k_prime, "k_prime")
    seeds = relation.positions(ss_ids)
    if not seeds:
        return set()
    return {relation.ids[p] for p in augment_positions(relation.sky, seeds, k_prime)}


def dominator_positions(X: np.ndarray, p: int, k_prime: int) -> np.ndarray:
    """Rows that k'-dominate row p or equal it on >= k' positions (p included).

    Both kinds are exactly the rows better-or-equal on >= k' positions.
    """
    return np.flatnonzero(np.asarray(kernels.leq_at_least(X, X[p], k_prime), dtype=bool))


def dominator_sets(relation: Relation, labels: PartitionLabels, k_prime: int | None = None) -> dict:
    """dom(u) for every SS/SN tuple: its k'-dominators plus its augment set."""
    k_prime = labels.k_prime if k_prime is None else k_prime
    _check_budget(relation, k_prime, "k_prime")
    out = {}
    for tid, lab in labels.labels.items():
        if lab == NN:
            continue
        p = relation.position(tid)
        out[tid] = {relation.ids[q] for q in dominator_positions(relation.sky, p, k_prime)}
    return out


def dominator_set(relation: Relation, labels: PartitionLabels, tuple_id, k_prime: int | None = None) -> set:
    if labels.labels.get(relation.ids[relation.position(tuple_id)]) == NN:
        raise ValueError(f"tuple {tuple_id!r} is NN; dominator sets exist only for SS and SN tuples")
    k_prime = labels.k_prime if k_prime is None else k_prime
    p = relation.position(tuple_id)
    return {relation.ids[q] for q in dominator_positions(relation.sky, p, k_prime)}


def check_uvp(relation: Relation, i: int) -> bool:
    """True when no two tuples agree on every position of any i-subset."""
    _check_budget(relation, i, "i")
    X = relation.sky
    if len(relation) < 2:
        return True
    for cols in combinations(range(relation.schema.d), i):
        sub = X[:, cols]
        if np.unique(sub, axis=0).shape[0] < sub.shape[0]:
            return False
    return True
