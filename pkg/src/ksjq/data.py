"""Synthetic relations, CSV persistence and the worked flight fixture.

CSV layout: optional ``#`` comment lines, then a header naming column roles
(``id``, ``j:<name>``, ``s:<name>``, ``g:<name>:<SUM|MIN>``), then one row
per tuple. Skyline cells are written with ``repr`` so a write/read cycle
reproduces every float exactly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .relation import AGG_FUNCTIONS, Relation, Schema

DISTRIBUTIONS = ("independent", "correlated", "anticorrelated")
GENERATOR_NAME = "numpy-pcg64"

# Distribution constants. Values outside [0, 1) are redrawn, never clipped.
CORR_LEVEL_SD = 0.25     # spread of the shared per-tuple level along the diagonal
CORR_NOISE_SD = 0.05     # per-coordinate deviation from that level
ANTI_LEVEL_SD = 0.05     # spread of the hyperplane offset around 0.5
ANTI_SPREAD = 0.5        # half-width of the zero-sum deviation along the hyperplane


class CSVFormatError(ValueError):
    """A relation file that does not follow the column-role layout."""


@dataclass(frozen=True)
class DatasetSpec:
    n: int
    d: int
    a: int = 0
    g: int = 1
    dist: str = "independent"
    seed: int = 0
    agg_fn: str = "SUM"

    def __post_init__(self):
        dist = self.dist.lower()
        aliases = {"i": "independent", "c": "correlated", "a": "anticorrelated",
                   "anti": "anticorrelated", "indep": "independent", "corr": "correlated"}
        object.__setattr__(self, "dist", aliases.get(dist, dist))
        object.__setattr__(self, "agg_fn", self.agg_fn.upper())
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not 0 <= self.a <= self.d:
            raise ValueError("a must lie in 0..d")
        if self.a == self.d:
            raise ValueError("at least one local skyline attribute is required (a < d)")
        if self.g < 1:
            raise ValueError("g must be >= 1")
        if self.dist not in DISTRIBUTIONS:
            raise ValueError(f"dist must be one of {DISTRIBUTIONS}")
        if self.agg_fn not in AGG_FUNCTIONS:
            raise ValueError(f"agg_fn must be one of {AGG_FUNCTIONS}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def joined_size(self) -> float:
        """Expected equality-join size of two such relations, n^2 / g."""
        return self.n * self.n / self.g

    def schema(self) -> Schema:
        l = self.d - self.a  # noqa: E741
        return Schema(("key",), tuple(f"s{i}" for i in range(l)),
                      tuple(f"g{j}" for j in range(self.a)), (self.agg_fn,) * self.a)


def _redraw(rng, draw, n):
    """Draw rows with ``draw(rng, count)`` until n rows lie inside [0, 1)."""
    rows = []
    have = 0
    while have < n:
        batch = draw(rng, n - have)
        batch = batch[np.all((batch >= 0.0) & (batch < 1.0), axis=1)]
        rows.append(batch)
        have += batch.shape[0]
    return np.concatenate(rows)[:n] if rows else None


def _independent(rng, n, d):
    return rng.random((n, d))


def _correlated(rng, n, d):
    def draw(r, count):
        level = r.normal(0.5, CORR_LEVEL_SD, size=(count, 1))
        return level + r.normal(0.0, CORR_NOISE_SD, size=(count, d))
    return _redraw(rng, draw, n)


def _anticorrelated(rng, n, d):
    def draw(r, count):
        level = r.normal(0.5, ANTI_LEVEL_SD, size=(count, 1))
        spread = r.uniform(-ANTI_SPREAD, ANTI_SPREAD, size=(count, d))
        if d > 1:
            spread -= spread.mean(axis=1, keepdims=True)
        return level + spread
    return _redraw(rng, draw, n)


def generate(spec: DatasetSpec) -> Relation:
    """Deterministic synthetic relation for ``spec``."""
    schema = spec.schema()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.n == 0:
        return Relation(schema, [], [], np.empty((0, spec.d)), name=f"gen-{spec.seed}")
    maker = {"independent": _independent, "correlated": _correlated,
             "anticorrelated": _anticorrelated}[spec.dist]
    sky = maker(rng, spec.n, spec.d)
    keys = rng.integers(0, spec.g, size=spec.n)
    return Relation(schema, list(range(spec.n)), [(int(k),) for k in keys], sky,
                    name=f"gen-{spec.seed}")


# -- CSV ---------------------------------------------------------------------

def _header(schema: Schema) -> list[str]:
    cols = ["id"] + [f"j:{c}" for c in schema.join] + [f"s:{c}" for c in schema.local]
    cols += [f"g:{c}:{f}" for c, f in zip(schema.aggregate, schema.agg_fns)]
    return cols


def _parse_header(cells: list[str], where: str) -> Schema:
    cells = [c.strip() for c in cells]
    if not cells or cells[0] != "id":
        raise CSVFormatError(f"{where}: header must start with 'id', got {cells[:1]}")
    join, local, agg, fns = [], [], [], []
    for col, cell in enumerate(cells[1:], start=2):
        parts = cell.split(":")
        if parts[0] == "j" and len(parts) == 2 and parts[1]:
            if local or agg:
                raise CSVFormatError(f"{where}, column {col}: join columns must precede skyline columns")
            join.append(parts[1])
        elif parts[0] == "s" and len(parts) == 2 and parts[1]:
            if agg:
                raise CSVFormatError(f"{where}, column {col}: local columns must precede aggregate columns")
            local.append(parts[1])
        elif parts[0] == "g" and len(parts) == 3 and parts[1]:
            if parts[2].upper() not in AGG_FUNCTIONS:
                raise CSVFormatError(f"{where}, column {col}: unknown aggregate function {parts[2]!r}")
            agg.append(parts[1])
            fns.append(parts[2].upper())
        else:
            raise CSVFormatError(f"{where}, column {col}: bad column role {cell!r}")
    try:
        return Schema(tuple(join), tuple(local), tuple(agg), tuple(fns))
    except ValueError as exc:
        raise CSVFormatError(f"{where}: {exc}") from exc


def parse_csv(text: str, source: str = "<string>") -> Relation:
    lines = text.splitlines()
    body_start = 0
    while body_start < len(lines) and (lines[body_start].startswith("#") or not lines[body_start].strip()):
        body_start += 1
    if body_start == len(lines):
        raise CSVFormatError(f"{source}: missing header row")
    rows = list(csv.reader(lines[body_start:]))
    schema = _parse_header(rows[0], f"{source}, line {body_start + 1}")
    width = 1 + schema.m + schema.d
    ids, keys, sky = [], [], []
    seen = {}
    for offset, row in enumerate(rows[1:], start=body_start + 2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != width:
            raise CSVFormatError(f"{source}, line {offset}: expected {width} cells, found {len(row)}")
        rel_id = row[0].strip()
        if rel_id in seen:
            raise CSVFormatError(f"{source}, line {offset}, column 1: duplicate id {rel_id!r} "
                                 f"(first on line {seen[rel_id]})")
        seen[rel_id] = offset
        values = []
        for col in range(1 + schema.m, width):
            try:
                x = float(row[col])
            except ValueError:
                raise CSVFormatError(f"{source}, line {offset}, column {col + 1}: "
                                     f"non-numeric skyline value {row[col]!r}") from None
            if not np.isfinite(x):
                raise CSVFormatError(f"{source}, line {offset}, column {col + 1}: non-finite value")
            values.append(x)
        ids.append(rel_id)
        keys.append(tuple(row[1:1 + schema.m]))
        sky.append(values)
    try:
        return Relation(schema, ids, keys, np.array(sky, dtype=np.float64).reshape(len(ids), schema.d),
                        name=Path(source).stem)
    except ValueError as exc:
        raise CSVFormatError(f"{source}: {exc}") from exc


def read_csv(path) -> Relation:
    path = Path(path)
    return parse_csv(path.read_text(), str(path))


def _fmt(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() and abs(x) < 2 ** 53 else repr(x)


def dumps_csv(relation: Relation, comments: list[str] | None = None) -> str:
    buf = io.StringIO()
    for line in comments or ():
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_header(relation.schema))
    for tid, key, row in zip(relation.ids, relation.keys, relation.sky.tolist()):
        writer.writerow([tid, *key, *(_fmt(x) for x in row)])
    return buf.getvalue()


def write_csv(relation: Relation, path, comments: list[str] | None = None) -> None:
    Path(path).write_text(dumps_csv(relation, comments))


def write_generated(spec: DatasetSpec, path) -> Relation:
    rel = generate(spec)
    meta = [f"gen={GENERATOR_NAME} seed={spec.seed}",
            f"n={spec.n} d={spec.d} a={spec.a} g={spec.g} dist={spec.dist}"]
    write_csv(rel, path, meta)
    return rel


# -- fixture -----------------------------------------------------------------

def fixture_path(name: str) -> Path:
    return Path(str(resources.files("ksjq") / "fixtures" / name))


def flight_fixture() -> tuple[Relation, Relation]:
    """The two-leg flight example: legs out of city A, legs into city B.

    Cost is an aggregate component (SUM), so plain queries see four skyline
    attributes per leg and aggregate queries sum the two costs.
    """
    return read_csv(fixture_path("flights_leg1.csv")), read_csv(fixture_path("flights_leg2.csv"))
