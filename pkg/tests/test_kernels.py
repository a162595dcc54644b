import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ksjq import kernels
from ksjq.data import DatasetSpec, generate
from ksjq.engine import ALGORITHMS, QueryConfig, k_range, run_query
from ksjq.partition import classify, classify_nonequality
from ksjq.relation import Relation

needs_both = pytest.mark.skipif(len(kernels.AVAILABLE) < 2, reason="compiled extension not built")


def _coarse(rel: Relation) -> Relation:
    # quarter steps so ties, equal join values and duplicate vectors are common
    return Relation(rel.schema, rel.ids, rel.keys, np.round(rel.sky * 4) / 4)


specs = st.builds(DatasetSpec, n=st.integers(0, 30), d=st.integers(2, 5), a=st.just(0),
                  g=st.integers(1, 5), dist=st.sampled_from(["i", "c", "a"]),
                  seed=st.integers(0, 2 ** 32))


def _each_backend(fn):
    out = {}
    for name in sorted(kernels.AVAILABLE):
        with kernels.backend(name):
            out[name] = fn()
    return out


@needs_both
@settings(max_examples=60, deadline=None)
@given(specs, st.data())
def test_labels_agree_across_backends(spec, data):
    rel = _coarse(generate(spec))
    k = data.draw(st.integers(1, spec.d))
    cond = data.draw(st.sampled_from(["eq", "lt", "leq", "gt", "geq"]))
    side = data.draw(st.sampled_from(["first", "second"]))

    def labels():
        if cond == "eq":
            return classify(rel, k).labels
        return classify_nonequality(rel, k, cond, side).labels
    results = _each_backend(labels)
    assert results["python"] == results["compiled"]


@needs_both
@settings(max_examples=40, deadline=None)
@given(specs, st.integers(0, 2 ** 32), st.data())
def test_queries_agree_across_backends(spec, seed2, data):
    r1 = _coarse(generate(spec))
    r2 = _coarse(generate(DatasetSpec(spec.n, spec.d, 0, spec.g, spec.dist, seed2)))
    lo, hi = k_range(r1.schema, r2.schema, False)
    k = data.draw(st.integers(lo, hi))
    cond = data.draw(st.sampled_from(["eq", "lt", "geq"]))
    algo = data.draw(st.sampled_from([a for a in ALGORITHMS if a != "cartesian"]))
    results = _each_backend(lambda: run_query(r1, r2, QueryConfig(k, False, cond, algo)).pairs)
    assert results["python"] == results["compiled"]


@needs_both
@pytest.mark.parametrize("agg_fn", ["SUM", "MIN"])
def test_aggregate_queries_agree_across_backends(agg_fn):
    r1 = _coarse(generate(DatasetSpec(60, 5, 2, 4, "a", 3, agg_fn)))
    r2 = _coarse(generate(DatasetSpec(60, 5, 2, 4, "a", 4, agg_fn)))
    for k in range(7, 9):
        for algo in ("naive", "grouping", "dominator"):
            results = _each_backend(lambda: run_query(r1, r2, QueryConfig(k, True, "eq", algo)).pairs)
            assert results["python"] == results["compiled"]


def test_set_backend_rejects_unknown_names():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_context_manager_restores_the_backend():
    before = kernels.BACKEND
    with kernels.backend("python"):
        assert kernels.BACKEND == "python"
    assert kernels.BACKEND == before


def _probe(env_value):
    env = dict(os.environ, KSJQ_BACKEND=env_value)
    return subprocess.run([sys.executable, "-c", "from ksjq import kernels; print(kernels.BACKEND)"],
                          capture_output=True, text=True, env=env, check=False)


def test_environment_selects_the_fallback():
    proc = _probe("python")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "python"


def test_environment_rejects_a_missing_backend():
    proc = _probe("quantum")
    assert proc.returncode != 0
    assert "KSJQ_BACKEND" in proc.stderr


@needs_both
def test_compiled_is_the_default():
    proc = _probe("")
    assert proc.stdout.strip() == "compiled"
