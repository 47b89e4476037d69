from dataclasses import dataclass

import numpy as np

from core import DimensionError, ManifoldAlignError


class MetricError(ManifoldAlignError, ValueError):
    """Metric preconditions do not hold"""

    pass


@dataclass(frozen=True, eq=False)
class AlignedTestSet:
    """Aligned vision and language embeddings of the evaluated pairs, row-paired."""

    vision: np.ndarray
    language: np.ndarray
    labels: tuple
    pair_ids: tuple

    def __post_init__(self):
        vision = np.atleast_2d(np.asarray(self.vision, dtype=np.float64))
        language = np.atleast_2d(np.asarray(self.language, dtype=np.float64))
        if vision.shape != language.shape:
            raise DimensionError(f"aligned vision {vision.shape} and language {language.shape} differ")
        if not (len(self.labels) == len(self.pair_ids) == vision.shape[0]):
            raise DimensionError("labels and pair_ids must have one entry per pair")
        if not (np.all(np.isfinite(vision)) and np.all(np.isfinite(language))):
            raise MetricError("aligned embeddings contain non-finite values")
        object.__setattr__(self, "vision", vision)
        object.__setattr__(self, "language", language)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "pair_ids", tuple(self.pair_ids))

    def __len__(self):
        return self.vision.shape[0]

    @property
    def classes(self):
        """Class of each pair; unlabeled pairs form a class of their own."""
        return np.array(
            [label if label is not None else f"pair:{pair_id}" for label, pair_id in zip(self.labels, self.pair_ids)],
            dtype=object,
        )

    @property
    def tie_keys(self):
        """Integer key ordering the pairs by pair_id."""
        keys = np.empty(len(self), dtype=int)
        keys[np.argsort(np.array(self.pair_ids, dtype=object), kind="stable")] = np.arange(len(self))
        return keys
