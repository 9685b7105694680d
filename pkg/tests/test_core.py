import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finmetric import (
    DimensionError,
    DistanceMatrix,
    StructureError,
    Tolerance,
    discrete_metric,
    family_member,
    sample_pseudometric,
    sup_distance,
    validate,
    zero_matrix,
)

import oracles


def test_discrete_metric_is_metric():
    report = validate(discrete_metric(3))
    assert report.is_metric and report.is_pseudometric
    assert report.violations == ()


def test_triangle_violation_reported():
    report = validate([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert not report.is_pseudometric
    assert not report.is_metric
    (v,) = report.violations
    assert v.kind == "triangle"
    assert v.indices == (0, 1, 2)
    assert v.magnitude == 1.0


def test_zero_matrix_is_pseudometric_not_metric():
    report = validate(zero_matrix(2))
    assert report.is_pseudometric
    assert not report.is_metric
    assert [v.kind for v in report.violations] == ["positivity"]


def test_violations_are_exhaustive():
    m = [[0.5, 1, -1], [2, 0, 1], [-1, 1, 0]]
    kinds = {v.kind for v in validate(m).violations}
    assert kinds >= {"symmetry", "diagonal", "negativity", "positivity"}


def test_tolerance_slack():
    m = [[0, 1, 2 + 1e-10], [1, 0, 1], [2 + 1e-10, 1, 0]]
    assert not validate(m).is_pseudometric
    assert validate(m, Tolerance(1e-9)).is_pseudometric
    assert validate(m, 1e-9).is_pseudometric


def test_small_sizes_are_valid():
    assert validate(np.zeros((0, 0))).is_metric
    assert validate([[0.0]]).is_metric


@pytest.mark.parametrize("bad", [[[0, 1]], [[0, np.nan], [np.nan, 0]], [[0, np.inf], [np.inf, 0]], [1, 2, 3]])
def test_structural_errors(bad):
    with pytest.raises(StructureError):
        validate(bad)


def test_distance_matrix_is_read_only():
    m = DistanceMatrix([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        m.entries[0, 1] = 5.0
    source = np.array([[0.0, 1.0], [1.0, 0.0]])
    m = DistanceMatrix(source)
    source[0, 1] = 7.0
    assert m[0, 1] == 1.0


def test_sup_distance_examples():
    d = sample_pseudometric(4, seed=3)
    assert sup_distance(d, d) == 0.0
    assert sup_distance(zero_matrix(3), discrete_metric(3)) == 1.0
    # entrywise: members differ only in the x_0-x_1 and x_1-x_2 entries, each by 1
    assert sup_distance(family_member((0, 1)), family_member((1, 1))) == 1.0


def test_sup_distance_size_mismatch():
    with pytest.raises(DimensionError):
        sup_distance(zero_matrix(2), zero_matrix(3))


def _grid_matrices(n, values=(0.0, 0.5, 1.0, 2.0)):
    iu = list(zip(*np.triu_indices(n, 1)))
    for combo in itertools.product(values, repeat=len(iu)):
        m = np.zeros((n, n))
        for (i, j), v in zip(iu, combo):
            m[i, j] = m[j, i] = v
        yield m


@pytest.mark.parametrize("n", [2, 3, 4])
def test_validate_matches_oracle_on_grid(n):
    for m in _grid_matrices(n):
        report = validate(m)
        assert report.is_pseudometric == oracles.is_pseudometric(m)
        assert report.is_metric == oracles.is_metric(m)


def test_validate_matches_oracle_on_unstructured_grid():
    # full 3x3 grid rows, so asymmetric and nonzero-diagonal inputs occur too
    rng = np.random.default_rng(11)
    values = np.array([0.0, 0.5, 1.0, 2.0])
    for _ in range(3000):
        m = rng.choice(values, size=(3, 3))
        if rng.random() < 0.5:
            np.fill_diagonal(m, 0.0)
        assert validate(m).is_pseudometric == oracles.is_pseudometric(m)
        assert validate(m).is_metric == oracles.is_metric(m)


def test_is_metric_implies_pseudometric():
    rng = np.random.default_rng(5)
    for _ in range(500):
        m = rng.choice([0.0, 1.0, 2.0], size=(4, 4))
        m = np.triu(m, 1)
        m = m + m.T
        r = validate(m)
        assert not r.is_metric or r.is_pseudometric


finite = st.floats(min_value=0, max_value=100, allow_nan=False)


def _sym(n):
    return st.lists(finite, min_size=n * n, max_size=n * n).map(
        lambda xs: DistanceMatrix(np.triu(np.array(xs).reshape(n, n), 1) + np.triu(np.array(xs).reshape(n, n), 1).T)
    )


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(_sym(n), _sym(n), _sym(n))))
def test_sup_distance_is_a_metric(triple):
    a, b, c = triple
    assert sup_distance(a, b) == sup_distance(b, a)
    assert (sup_distance(a, b) == 0) == (a == b)
    assert sup_distance(a, c) <= sup_distance(a, b) + sup_distance(b, c)


def test_pointwise_max_of_pseudometrics_is_pseudometric():
    for seed in range(300):
        n = 2 + seed % 6
        a = sample_pseudometric(n, seed)
        b = sample_pseudometric(n, seed + 10_000)
        assert validate(np.maximum(a.entries, b.entries), 1e-9).is_pseudometric
