from enum import Enum

import numpy as np

from .errors import DimensionError, InvalidVectorError

_BLOCK_ELEMENTS = 1 << 22


class DistanceMetric(str, Enum):
    COSINE = "cosine"
    EUCLIDEAN = "euclidean"


def _as_rows(U, V):
    U = np.atleast_2d(np.asarray(U, dtype=np.float64))
    V = np.atleast_2d(np.asarray(V, dtype=np.float64))
    if U.shape != V.shape:
        raise DimensionError(f"shape mismatch: {U.shape} vs {V.shape}")
    return U, V


def _norms(M):
    norms = np.linalg.norm(M, axis=-1)
    if np.any(norms == 0):
        raise InvalidVectorError("cosine distance is undefined for a zero vector")
    return norms


def distance(u, v, metric=DistanceMetric.COSINE):
    """
    Distance between two vectors.
    Cosine: 1 - u.v / (|u||v|), in [0, 2]. Euclidean: |u - v|.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.ndim != 1 or u.shape != v.shape:
        raise DimensionError(f"shape mismatch: {u.shape} vs {v.shape}")
    return float(rowwise_distance(u, v, metric)[0])


def rowwise_distance(U, V, metric=DistanceMetric.COSINE):
    """Distance between U[i] and V[i] for every row i."""
    U, V = _as_rows(U, V)
    metric = DistanceMetric(metric)
    if metric is DistanceMetric.EUCLIDEAN:
        return np.linalg.norm(U - V, axis=1)

    similarity = np.einsum("ij,ij->i", U, V) / (_norms(U) * _norms(V))
    return 1.0 - np.clip(similarity, -1.0, 1.0)


def rowwise_distance_grad(U, V, metric=DistanceMetric.COSINE):
    """
    Gradients of rowwise_distance with respect to U and V.
    Euclidean distance has no gradient at U[i] == V[i]; zero is used there.
    """
    U, V = _as_rows(U, V)
    metric = DistanceMetric(metric)
    if metric is DistanceMetric.EUCLIDEAN:
        diff = U - V
        dist = np.linalg.norm(diff, axis=1, keepdims=True)
        grad_u = np.divide(diff, dist, out=np.zeros_like(diff), where=dist > 0)
        return grad_u, -grad_u

    nu = _norms(U)[:, None]
    nv = _norms(V)[:, None]
    similarity = np.einsum("ij,ij->i", U, V)[:, None] / (nu * nv)
    grad_u = -(V / (nu * nv) - similarity * U / nu**2)
    grad_v = -(U / (nu * nv) - similarity * V / nv**2)
    return grad_u, grad_v


def pairwise_distances(A, B, metric=DistanceMetric.COSINE):
    """len(A) × len(B) matrix of distances between the rows of A and B."""
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    metric = DistanceMetric(metric)
    if metric is DistanceMetric.EUCLIDEAN:
        # row blocks keep the broadcast difference tensor small
        out = np.empty((A.shape[0], B.shape[0]))
        block = max(1, _BLOCK_ELEMENTS // max(1, B.size))
        for start in range(0, A.shape[0], block):
            chunk = A[start:start + block]
            out[start:start + block] = np.linalg.norm(chunk[:, None, :] - B[None, :, :], axis=2)
        return out

    A_unit = A / _norms(A)[:, None]
    B_unit = B / _norms(B)[:, None]
    return 1.0 - np.clip(A_unit @ B_unit.T, -1.0, 1.0)
