import logging
from dataclasses import dataclass

import numpy as np

from core import DimensionError, NumericalError


class DegenerateInputError(NumericalError):
    """A centered point cloud has zero Frobenius norm"""

    pass


@dataclass(frozen=True)
class AblationFlags:
    translation: bool = True
    scaling: bool = True
    rotation: bool = True

    @classmethod
    def disabled(cls):
        return cls(False, False, False)

    def to_dict(self):
        return {"translation": self.translation, "scaling": self.scaling, "rotation": self.rotation}


@dataclass(frozen=True, eq=False)
class ProcrustesTransform:
    """
    Translation, scaling and rotation that bring the language cloud onto the
    vision cloud. Disabled components are stored as identities: zero means,
    unit scales, R = I.
    """

    m_v: np.ndarray
    m_l: np.ndarray
    s_v: float
    s_l: float
    R: np.ndarray
    flags: AblationFlags

    @property
    def dim(self):
        return self.R.shape[0]

    @classmethod
    def identity(cls, dim: int):
        zeros = np.zeros(dim)
        return cls(zeros, zeros.copy(), 1.0, 1.0, np.eye(dim), AblationFlags.disabled())

    def to_dict(self):
        return {
            "m_v": self.m_v.tolist(),
            "m_l": self.m_l.tolist(),
            "s_v": self.s_v,
            "s_l": self.s_l,
            "R": self.R.tolist(),
            "flags": self.flags.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload):
        return cls(
            np.asarray(payload["m_v"], dtype=np.float64),
            np.asarray(payload["m_l"], dtype=np.float64),
            float(payload["s_v"]),
            float(payload["s_l"]),
            np.asarray(payload["R"], dtype=np.float64).reshape(len(payload["m_v"]), -1),
            AblationFlags(**payload["flags"]),
        )


def _frobenius_scale(centered, name):
    scale = float(np.linalg.norm(centered))
    if scale == 0.0:
        raise DegenerateInputError(f"{name} embeddings collapse to a single point; cannot scale")
    return scale


def fit_procrustes(Ev, El, flags: AblationFlags = AblationFlags()) -> ProcrustesTransform:
    """
    Fit the transform on row-paired training embeddings.
    R minimizes ||A - B R^T||_F over orthogonal matrices (reflections
    allowed), where A and B are the centered, scaled vision and language
    clouds.
    """
    Ev = np.asarray(Ev, dtype=np.float64)
    El = np.asarray(El, dtype=np.float64)
    if Ev.ndim != 2 or Ev.shape != El.shape:
        raise DimensionError(f"paired embeddings must share a 2-D shape, got {Ev.shape} and {El.shape}")
    if Ev.shape[0] < 2:
        raise DimensionError("Procrustes needs at least 2 paired rows")

    dim = Ev.shape[1]
    m_v = Ev.mean(axis=0) if flags.translation else np.zeros(dim)
    m_l = El.mean(axis=0) if flags.translation else np.zeros(dim)
    A = Ev - m_v
    B = El - m_l
    s_v = _frobenius_scale(A, "vision") if flags.scaling else 1.0
    s_l = _frobenius_scale(B, "language") if flags.scaling else 1.0
    A = A / s_v
    B = B / s_l

    if flags.rotation:
        # A^T B = U S V^T  =>  R = U V^T, so that B R^T best matches A
        u, _, vt = np.linalg.svd(A.T @ B)
        R = u @ vt
    else:
        R = np.eye(dim)

    transform = ProcrustesTransform(m_v, m_l, s_v, s_l, R, flags)
    logging.info(
        f"Fitted Procrustes on {Ev.shape[0]} pairs "
        f"(translation={flags.translation}, scaling={flags.scaling}, rotation={flags.rotation}); "
        f"residual={procrustes_distance(transform, Ev, El):.6f}"
    )
    return transform


def _check_dim(t, e):
    e = np.asarray(e, dtype=np.float64)
    if e.shape[-1] != t.dim or e.ndim not in (1, 2):
        raise DimensionError(f"embedding has dimension {e.shape[-1]}, transform expects {t.dim}")
    return e


def align_vision(t: ProcrustesTransform, e) -> np.ndarray:
    """(e - m_v) / s_v for one vector or a batch of rows."""
    e = _check_dim(t, e)
    return (e - t.m_v) / t.s_v


def align_language(t: ProcrustesTransform, e) -> np.ndarray:
    """((e - m_l) / s_l) R^T for one vector or a batch of rows."""
    e = _check_dim(t, e)
    return ((e - t.m_l) / t.s_l) @ t.R.T


def procrustes_distance(t: ProcrustesTransform, Ev, El) -> float:
    return float(np.linalg.norm(align_vision(t, Ev) - align_language(t, El)))
