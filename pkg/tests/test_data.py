import numpy as np
import pytest

from ksjq.data import (CSVFormatError, DatasetSpec, dumps_csv, generate, parse_csv, read_csv,
                       write_csv, write_generated)


def test_empty_spec_gives_an_empty_relation():
    rel = generate(DatasetSpec(0, 4, a=1, g=3))
    assert len(rel) == 0
    assert rel.sky.shape == (0, 4)


@pytest.mark.parametrize("dist", ["independent", "correlated", "anticorrelated"])
def test_generation_is_a_function_of_the_spec(dist, tmp_path):
    spec = DatasetSpec(200, 5, a=2, g=7, dist=dist, seed=42)
    assert generate(spec) == generate(spec)
    write_generated(spec, tmp_path / "a.csv")
    write_generated(spec, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert generate(spec) != generate(DatasetSpec(200, 5, a=2, g=7, dist=dist, seed=43))


@pytest.mark.parametrize("dist", ["independent", "correlated", "anticorrelated"])
def test_values_lie_in_the_unit_interval(dist):
    sky = generate(DatasetSpec(2000, 6, dist=dist, seed=1)).sky
    assert sky.min() >= 0.0 and sky.max() < 1.0


def _mean_offdiag_corr(sky):
    c = np.corrcoef(sky, rowvar=False)
    return c[~np.eye(len(c), dtype=bool)].mean()


def test_correlation_signs():
    corr = {dist: _mean_offdiag_corr(generate(DatasetSpec(1000, 5, dist=dist, seed=4)).sky)
            for dist in ("independent", "correlated", "anticorrelated")}
    assert corr["correlated"] > 0.5
    assert corr["anticorrelated"] < -0.1
    assert abs(corr["independent"]) < 0.1


def test_join_keys_are_balanced():
    n, g = 10_000, 10
    keys = np.array([k[0] for k in generate(DatasetSpec(n, 3, g=g, seed=8)).keys])
    counts = np.bincount(keys, minlength=g)
    assert len(counts) == g
    sd = np.sqrt(n * (1 / g) * (1 - 1 / g))
    assert np.all(np.abs(counts - n / g) <= 5 * sd)


@pytest.mark.parametrize("kw", [dict(n=-1, d=3), dict(n=5, d=0), dict(n=5, d=3, a=3),
                                dict(n=5, d=3, g=0), dict(n=5, d=3, dist="gaussian"),
                                dict(n=5, d=3, agg_fn="AVG"), dict(n=5, d=3, seed=-1)])
def test_invalid_specs(kw):
    with pytest.raises(ValueError):
        DatasetSpec(**kw)


def test_distribution_aliases():
    assert DatasetSpec(1, 2, dist="A").dist == "anticorrelated"
    assert DatasetSpec(1, 2, dist="corr").dist == "correlated"


@pytest.mark.parametrize("dist", ["independent", "anticorrelated"])
def test_round_trip_is_exact(dist, tmp_path):
    rel = generate(DatasetSpec(300, 5, a=2, g=4, dist=dist, seed=11, agg_fn="MIN"))
    path = tmp_path / "r.csv"
    write_csv(rel, path)
    back = read_csv(path)
    assert back == rel
    assert np.array_equal(back.sky, rel.sky)


def test_metadata_line_names_the_generator(tmp_path):
    spec = DatasetSpec(5, 2, seed=99)
    write_generated(spec, tmp_path / "r.csv")
    first = (tmp_path / "r.csv").read_text().splitlines()[0]
    assert first == "# gen=numpy-pcg64 seed=99"


def test_header_only_file_gives_an_empty_relation():
    rel = parse_csv("# nothing yet\nid,j:k,s:x,g:c:MIN\n")
    assert len(rel) == 0
    assert rel.schema.agg_fns == ("MIN",)


def test_fixture_files_parse(flights):
    left, right = flights
    assert len(left) == 9 and len(right) == 8
    assert left.schema.local == ("dur", "rtg", "amn")
    assert left.schema.aggregate == ("cost",)
    assert dumps_csv(left).splitlines()[0] == "id,j:dest,s:dur,s:rtg,s:amn,g:cost:SUM"


@pytest.mark.parametrize("text, where", [
    ("", "missing header"),
    ("name,s:x\n1,2\n", "line 1"),
    ("id,s:x,q:y\n1,2,3\n", "column 3"),
    ("id,s:x,g:y:AVG\n1,2,3\n", "column 3"),
    ("id,g:y:SUM,s:x\n1,2,3\n", "column 3"),
    ("id,s:x,s:y\n1,2,3\n2,4\n", "line 3"),
    ("id,s:x,s:y\n1,2,3\n2,4,five\n", "line 3, column 3"),
    ("id,s:x,s:y\n1,2,3\n1,4,5\n", "line 3, column 1"),
    ("#meta\nid,s:x\n1,nan\n", "line 3, column 2"),
])
def test_malformed_files_are_rejected_with_a_location(text, where):
    with pytest.raises(CSVFormatError, match=where):
        parse_csv(text, "input.csv")
