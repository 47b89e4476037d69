import numpy as np

from core import DistanceMetric, rowwise_distance, rowwise_distance_grad


def triplet_loss(ea, ep, en, margin, metric=DistanceMetric.COSINE) -> float:
    """max(d(ea, ep) - d(ea, en) + margin, 0) on precomputed embeddings."""
    losses, _ = batch_triplet_loss(ea, ep, en, margin, metric, with_grad=False)
    return float(losses[0])


def batch_triplet_loss(EA, EP, EN, margin, metric=DistanceMetric.COSINE, with_grad=True):
    """
    Row-wise triplet losses and, optionally, their gradients with respect to
    each of the three embedding matrices. Clamped rows get zero gradient.
    """
    d_pos = rowwise_distance(EA, EP, metric)
    d_neg = rowwise_distance(EA, EN, metric)
    raw = d_pos - d_neg + margin
    losses = np.maximum(raw, 0.0)
    if not with_grad:
        return losses, None

    active = (raw > 0)[:, None]
    grad_a_pos, grad_p = rowwise_distance_grad(EA, EP, metric)
    grad_a_neg, grad_n = rowwise_distance_grad(EA, EN, metric)
    grads = (
        np.where(active, grad_a_pos - grad_a_neg, 0.0),
        np.where(active, grad_p, 0.0),
        np.where(active, -grad_n, 0.0),
    )
    return losses, grads
