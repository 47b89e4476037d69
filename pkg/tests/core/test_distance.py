import numpy as np
import pytest
from scipy.spatial.distance import cdist
from scipy.stats import ortho_group

from core import (
    DimensionError,
    DistanceMetric,
    InvalidVectorError,
    distance,
    pairwise_distances,
    rowwise_distance,
    rowwise_distance_grad,
)


@pytest.mark.parametrize(
    "u, v, metric, expected",
    [
        ([1, 0], [0, 1], DistanceMetric.COSINE, 1.0),
        ([1, 0], [-2, 0], DistanceMetric.COSINE, 2.0),
        ([3, 4], [6, 8], DistanceMetric.COSINE, 0.0),
        ([0, 0], [3, 4], DistanceMetric.EUCLIDEAN, 5.0),
        ([1, 1], [1, 1], DistanceMetric.EUCLIDEAN, 0.0),
    ],
)
def test_distance_values(u, v, metric, expected):
    assert distance(u, v, metric) == pytest.approx(expected, abs=1e-12)


def test_cosine_zero_vector():
    with pytest.raises(InvalidVectorError):
        distance([0.0, 0.0], [1.0, 0.0], DistanceMetric.COSINE)


def test_shape_mismatch():
    with pytest.raises(DimensionError):
        distance([1.0, 0.0], [1.0, 0.0, 0.0])


@pytest.mark.parametrize("metric", ["cosine", "euclidean"])
def test_pairwise_matches_scipy(metric):
    rng = np.random.default_rng(0)
    A = rng.standard_normal((7, 5))
    B = rng.standard_normal((4, 5))

    np.testing.assert_allclose(pairwise_distances(A, B, metric), cdist(A, B, metric), atol=1e-12)


@pytest.mark.parametrize("metric", ["cosine", "euclidean"])
def test_rowwise_matches_pairwise_diagonal(metric):
    rng = np.random.default_rng(1)
    U = rng.standard_normal((6, 3))
    V = rng.standard_normal((6, 3))

    np.testing.assert_allclose(rowwise_distance(U, V, metric), np.diag(pairwise_distances(U, V, metric)))


@pytest.mark.parametrize("metric", ["cosine", "euclidean"])
def test_gradient_matches_finite_differences(metric):
    rng = np.random.default_rng(2)
    U = rng.standard_normal((3, 4))
    V = rng.standard_normal((3, 4))
    grad_u, grad_v = rowwise_distance_grad(U, V, metric)
    h = 1e-6

    for M, grad in ((U, grad_u), (V, grad_v)):
        numeric = np.zeros_like(M)
        for index in np.ndindex(M.shape):
            original = M[index]
            M[index] = original + h
            up = rowwise_distance(U, V, metric).sum()
            M[index] = original - h
            down = rowwise_distance(U, V, metric).sum()
            M[index] = original
            numeric[index] = (up - down) / (2 * h)
        np.testing.assert_allclose(grad, numeric, atol=1e-6)


def test_euclidean_gradient_is_zero_at_coincident_points():
    grad_u, grad_v = rowwise_distance_grad([[1.0, 2.0]], [[1.0, 2.0]], DistanceMetric.EUCLIDEAN)

    assert not np.any(grad_u) and not np.any(grad_v)


@pytest.mark.parametrize("metric", ["cosine", "euclidean"])
@pytest.mark.parametrize("seed", range(20))
def test_symmetric_and_zero_on_self(seed, metric):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(1, 12))
    u, v = rng.normal(size=dim) * rng.uniform(0.1, 10), rng.normal(size=dim)

    assert distance(u, v, metric) == distance(v, u, metric)
    assert abs(distance(u, u, metric)) <= 1e-12
    assert distance(u, v, metric) >= 0.0


@pytest.mark.parametrize("seed", range(20))
def test_cosine_ignores_positive_scaling(seed):
    rng = np.random.default_rng(seed)
    U, V = rng.normal(size=(50, 6)), rng.normal(size=(50, 6))
    a, b = rng.uniform(1e-3, 1e3, size=(2, 50, 1))

    np.testing.assert_allclose(rowwise_distance(a * U, b * V), rowwise_distance(U, V), rtol=0, atol=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_rotation_preserves_pairwise_distances(seed):
    U, V = np.random.default_rng(seed).normal(size=(2, 9, 4))
    Q = ortho_group.rvs(4, random_state=seed)

    for metric in ("cosine", "euclidean"):
        np.testing.assert_allclose(
            pairwise_distances(U @ Q, V @ Q, metric), pairwise_distances(U, V, metric), rtol=0, atol=1e-12
        )
