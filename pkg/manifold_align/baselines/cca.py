import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from core import ConfigError, DimensionError, NumericalError


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Projection x -> (x - mean) @ W for one domain."""

    W: np.ndarray
    mean: np.ndarray
    domain: str

    def __post_init__(self):
        W = np.asarray(self.W, dtype=np.float64)
        mean = np.asarray(self.mean, dtype=np.float64)
        if W.ndim != 2 or mean.shape != (W.shape[0],):
            raise DimensionError(f"projection {W.shape} incompatible with mean {mean.shape}")
        if not (np.all(np.isfinite(W)) and np.all(np.isfinite(mean))):
            raise NumericalError(f"{self.domain} projection has non-finite entries")
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "mean", mean)

    @property
    def in_dim(self):
        return self.W.shape[0]

    @property
    def out_dim(self):
        return self.W.shape[1]


def apply_linear(linear_map: LinearMap, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim not in (1, 2) or x.shape[-1] != linear_map.in_dim:
        raise DimensionError(f"input has dimension {x.shape[-1]}, map expects {linear_map.in_dim}")
    return (x - linear_map.mean) @ linear_map.W


def default_cca_dim(dim_vision, dim_language, n, cap=64):
    return max(1, min(cap, dim_vision, dim_language, n - 1))


def _inverse_sqrt(C, ridge, name):
    # ridge scaled by the average variance so it is unit-free
    dim = C.shape[0]
    C = C + ridge * np.trace(C) / dim * np.eye(dim)
    eigenvalues, eigenvectors = la.eigh(C)
    tolerance = max(eigenvalues.max(), 0.0) * dim * np.finfo(np.float64).eps
    if eigenvalues.min() <= tolerance:
        raise NumericalError(
            f"{name} covariance is singular (smallest eigenvalue {eigenvalues.min():.3e}); use ridge > 0"
        )
    return (eigenvectors / np.sqrt(eigenvalues)) @ eigenvectors.T


def fit_cca(Xv, Xl, k: int, ridge: float = 1e-6):
    """
    Linear CCA through covariance whitening and an SVD of the whitened
    cross-covariance.
    :return: (vision LinearMap, language LinearMap, k canonical correlations, descending)
    """
    Xv = np.asarray(Xv, dtype=np.float64)
    Xl = np.asarray(Xl, dtype=np.float64)
    if Xv.ndim != 2 or Xl.ndim != 2 or Xv.shape[0] != Xl.shape[0]:
        raise DimensionError(f"CCA needs row-paired matrices, got {Xv.shape} and {Xl.shape}")
    n, dim_v = Xv.shape
    dim_l = Xl.shape[1]
    if n < 2:
        raise DimensionError("CCA needs at least 2 paired rows")
    if not 1 <= k <= min(dim_v, dim_l, n - 1):
        raise ConfigError(f"k={k} must be in [1, min(m_v={dim_v}, m_l={dim_l}, n-1={n - 1})]")
    if ridge < 0:
        raise ConfigError(f"ridge must be non-negative, got {ridge}")

    mean_v = Xv.mean(axis=0)
    mean_l = Xl.mean(axis=0)
    Cv = Xv - mean_v
    Cl = Xl - mean_l
    Cvv = Cv.T @ Cv / (n - 1)
    Cll = Cl.T @ Cl / (n - 1)
    Cvl = Cv.T @ Cl / (n - 1)

    isqrt_v = _inverse_sqrt(Cvv, ridge, "vision")
    isqrt_l = _inverse_sqrt(Cll, ridge, "language")
    U, S, Vt = la.svd(isqrt_v @ Cvl @ isqrt_l, full_matrices=False)

    W_v = isqrt_v @ U[:, :k]
    W_l = isqrt_l @ Vt[:k].T
    correlations = np.clip(S[:k], 0.0, None)
    logging.info(f"Fitted CCA: k={k}, ridge={ridge}, leading correlation={correlations[0]:.4f}")
    return LinearMap(W_v, mean_v, "vision"), LinearMap(W_l, mean_l, "language"), correlations
