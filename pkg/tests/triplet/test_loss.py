import numpy as np
import pytest

from core import DistanceMetric
from triplet import batch_triplet_loss, triplet_loss


def on_circle(angle):
    return np.array([np.cos(angle), np.sin(angle)])


def at_cosine_distance(d):
    # unit vector whose cosine distance to (1, 0) is d
    return on_circle(np.arccos(1.0 - d))


@pytest.mark.parametrize("d_pos, d_neg, expected", [(0.1, 0.9, 0.0), (0.5, 0.2, 0.7)])
def test_loss_values(d_pos, d_neg, expected):
    ea = np.array([1.0, 0.0])

    loss = triplet_loss(ea, at_cosine_distance(d_pos), at_cosine_distance(d_neg), 0.4)

    assert loss == pytest.approx(expected, abs=1e-12)


def test_identical_positive_orthogonal_negative():
    assert triplet_loss([1.0, 0.0], [1.0, 0.0], [0.0, 1.0], 0.4) == 0.0


def test_euclidean_loss():
    assert triplet_loss([0.0, 0.0], [3.0, 4.0], [1.0, 0.0], 0.5, DistanceMetric.EUCLIDEAN) == pytest.approx(4.5)


def test_loss_is_nonnegative_and_scale_invariant():
    rng = np.random.default_rng(0)
    EA, EP, EN = (rng.standard_normal((1000, 4)) for _ in range(3))
    scales = rng.uniform(0.1, 10.0, size=(3, 1000, 1))

    losses, _ = batch_triplet_loss(EA, EP, EN, 0.4, with_grad=False)
    scaled, _ = batch_triplet_loss(EA * scales[0], EP * scales[1], EN * scales[2], 0.4, with_grad=False)

    assert np.all(losses >= 0)
    np.testing.assert_allclose(scaled, losses, atol=1e-9)


def test_clamped_rows_have_zero_gradient():
    EA = np.array([[1.0, 0.0]])
    losses, grads = batch_triplet_loss(EA, EA.copy(), np.array([[0.0, 1.0]]), 0.4)

    assert losses[0] == 0.0
    assert all(not g.any() for g in grads)


@pytest.mark.parametrize("metric", list(DistanceMetric))
def test_gradients_match_finite_differences(metric):
    rng = np.random.default_rng(1)
    mats = [rng.standard_normal((5, 3)) for _ in range(3)]
    margin = 10.0  # keeps every row active
    _, grads = batch_triplet_loss(*mats, margin, metric)
    h = 1e-6

    for M, grad in zip(mats, grads):
        numeric = np.zeros_like(M)
        for index in np.ndindex(M.shape):
            original = M[index]
            M[index] = original + h
            up = batch_triplet_loss(*mats, margin, metric, with_grad=False)[0].sum()
            M[index] = original - h
            down = batch_triplet_loss(*mats, margin, metric, with_grad=False)[0].sum()
            M[index] = original
            numeric[index] = (up - down) / (2 * h)
        np.testing.assert_allclose(grad, numeric, atol=1e-6)
