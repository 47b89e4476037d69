from .transform import (
    AblationFlags,
    DegenerateInputError,
    ProcrustesTransform,
    align_language,
    align_vision,
    fit_procrustes,
    procrustes_distance,
)

__all__ = [
    "AblationFlags",
    "DegenerateInputError",
    "ProcrustesTransform",
    "align_language",
    "align_vision",
    "fit_procrustes",
    "procrustes_distance",
]
