"""Schema, tuple and relation containers shared by every module."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

AGG_FUNCTIONS = ("SUM", "MIN")


def canonical_value(value):
    """Canonical form of a join-key or id cell.

    Text is trimmed; anything that parses as an integer becomes ``int``, then
    ``float``; everything else stays text. Python numbers pass through.
    """
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        f = float(value)
        return int(f) if f.is_integer() else f
    text = str(value).strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        f = float(text)
    except ValueError:
        return text
    if not math.isfinite(f):
        return text
    return int(f) if f.is_integer() else f


@dataclass(frozen=True)
class Schema:
    """Column roles of a base relation.

    Skyline vectors hold the ``local`` attributes first, then the
    ``aggregate`` components; ``agg_fns[j]`` combines component ``j`` of a
    left and a right tuple when a query aggregates.
    """

    join: tuple[str, ...] = ()
    local: tuple[str, ...] = ()
    aggregate: tuple[str, ...] = ()
    agg_fns: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("join", "local", "aggregate", "agg_fns"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        fns = tuple(f.upper() for f in self.agg_fns)
        object.__setattr__(self, "agg_fns", fns)
        if len(fns) != len(self.aggregate):
            raise ValueError("agg_fns must have one entry per aggregate attribute")
        bad = [f for f in fns if f not in AGG_FUNCTIONS]
        if bad:
            raise ValueError(f"unsupported aggregate function(s) {bad}; use SUM or MIN")
        if self.d < 1:
            raise ValueError("a schema needs at least one skyline attribute")

    @property
    def m(self) -> int:
        return len(self.join)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.local)

    @property
    def a(self) -> int:
        return len(self.aggregate)

    @property
    def d(self) -> int:
        return len(self.local) + len(self.aggregate)

    @property
    def sky_names(self) -> tuple[str, ...]:
        return self.local + self.aggregate


class Tuple(NamedTuple):
    id: object
    join_key: tuple
    sky: tuple


@dataclass(eq=False)
class Relation:
    """A schema-tagged collection of tuples.

    Storage is columnar: ``ids`` and ``keys`` are lists, ``sky`` is an
    ``(n, d)`` float64 array. Positions (row numbers) are what the algorithms
    pass around; ids only appear at the API boundary.
    """

    schema: Schema
    ids: list = field(default_factory=list)
    keys: list = field(default_factory=list)
    sky: np.ndarray = None
    name: str = ""

    def __post_init__(self):
        n = len(self.ids)
        self.ids = [canonical_value(i) for i in self.ids]
        self.keys = [tuple(canonical_value(x) for x in key) for key in self.keys]
        if len(self.keys) != n:
            raise ValueError(f"{len(self.keys)} join keys for {n} tuples")
        if self.sky is None:
            self.sky = np.empty((0, self.schema.d))
        sky = np.ascontiguousarray(self.sky, dtype=np.float64).reshape(n, self.schema.d) \
            if n else np.empty((0, self.schema.d))
        if not np.all(np.isfinite(sky)):
            raise ValueError("skyline values must be finite")
        self.sky = sky
        for key in self.keys:
            if len(key) != self.schema.m:
                raise ValueError(f"join key {key!r} does not have {self.schema.m} values")
        if len(set(self.ids)) != n:
            seen = set()
            dup = next(i for i in self.ids if i in seen or seen.add(i))
            raise ValueError(f"duplicate tuple id {dup!r}")
        self._position = {tid: p for p, tid in enumerate(self.ids)}
        self._groups = None

    @classmethod
    def from_tuples(cls, schema: Schema, tuples: Iterable[Sequence], name: str = "") -> "Relation":
        """Build from ``(id, join_key, sky)`` triples."""
        rows = [Tuple(t[0], tuple(t[1]), tuple(t[2])) for t in tuples]
        sky = np.array([r.sky for r in rows], dtype=np.float64).reshape(len(rows), schema.d)
        return cls(schema, [r.id for r in rows], [r.join_key for r in rows], sky, name)

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[Tuple]:
        for p in range(len(self)):
            yield self.tuple(p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return (self.schema == other.schema and self.ids == other.ids
                and self.keys == other.keys and np.array_equal(self.sky, other.sky))

    def tuple(self, position: int) -> Tuple:
        return Tuple(self.ids[position], self.keys[position], tuple(self.sky[position].tolist()))

    def position(self, tuple_id) -> int:
        return self._position[canonical_value(tuple_id)]

    def positions(self, tuple_ids: Iterable) -> list[int]:
        return [self.position(t) for t in tuple_ids]

    @property
    def groups(self) -> dict:
        """Join key -> list of tuple ids, in first-appearance order."""
        if self._groups is None:
            groups: dict = {}
            for tid, key in zip(self.ids, self.keys):
                groups.setdefault(key, []).append(tid)
            self._groups = groups
        return self._groups

    def join_values(self) -> np.ndarray:
        """The single numeric join attribute, for non-equality joins."""
        if self.schema.m != 1:
            raise ValueError("non-equality joins need exactly one join attribute")
        try:
            return np.array([float(k[0]) for k in self.keys], dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise ValueError("non-equality join attribute must be numeric") from exc

    def with_keys(self, keys: list) -> "Relation":
        return Relation(self.schema, list(self.ids), keys, self.sky.copy(), self.name)

    def without_join(self) -> "Relation":
        """Same tuples with no join attributes (every pair joins)."""
        schema = Schema((), self.schema.local, self.schema.aggregate, self.schema.agg_fns)
        return Relation(schema, list(self.ids), [()] * len(self), self.sky.copy(), self.name)
