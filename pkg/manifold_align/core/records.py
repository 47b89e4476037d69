from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DatasetError


@dataclass(frozen=True, eq=False)
class PairRecord:
    """One vision/language correspondence, the unit of supervision."""

    pair_id: str
    vision: np.ndarray
    language: np.ndarray
    class_label: Optional[str] = None

    def __post_init__(self):
        for name in ("vision", "language"):
            vector = np.asarray(getattr(self, name), dtype=np.float64)
            if vector.ndim != 1 or vector.size == 0:
                raise DatasetError(f"{name} vector of pair {self.pair_id!r} must be 1-D and non-empty")
            if not np.all(np.isfinite(vector)):
                raise DatasetError(f"{name} vector of pair {self.pair_id!r} has non-finite values")
            vector.setflags(write=False)
            object.__setattr__(self, name, vector)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Ordered, immutable collection of pair records sharing both dimensions."""

    records: tuple
    dim_vision: int
    dim_language: int
    _vision: np.ndarray = field(init=False, repr=False, compare=False)
    _language: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        if self.dim_vision < 1 or self.dim_language < 1:
            raise DatasetError("dataset dimensions must be positive")

        seen = set()
        for position, record in enumerate(records, start=1):
            if record.pair_id in seen:
                raise DatasetError(f"duplicate pair_id {record.pair_id!r}", position)
            seen.add(record.pair_id)
            if record.vision.size != self.dim_vision:
                raise DatasetError(
                    f"vision dimension {record.vision.size} != {self.dim_vision}", position
                )
            if record.language.size != self.dim_language:
                raise DatasetError(
                    f"language dimension {record.language.size} != {self.dim_language}", position
                )

        vision = np.array([r.vision for r in records], dtype=np.float64).reshape(-1, self.dim_vision)
        language = np.array([r.language for r in records], dtype=np.float64).reshape(-1, self.dim_language)
        vision.setflags(write=False)
        language.setflags(write=False)
        object.__setattr__(self, "_vision", vision)
        object.__setattr__(self, "_language", language)

    @classmethod
    def from_records(cls, records):
        records = tuple(records)
        if not records:
            raise DatasetError("dataset is empty")
        return cls(records, records[0].vision.size, records[0].language.size)

    def __len__(self):
        return len(self.records)

    @property
    def vision(self):
        """n × dim_vision matrix, rows in record order (read-only)."""
        return self._vision

    @property
    def language(self):
        return self._language

    @property
    def pair_ids(self):
        return [r.pair_id for r in self.records]

    @property
    def labels(self):
        return [r.class_label for r in self.records]

    @property
    def is_labeled(self):
        return bool(self.records) and all(r.class_label is not None for r in self.records)

    @property
    def classes(self):
        return sorted({r.class_label for r in self.records if r.class_label is not None})

    def subset(self, indices):
        return Dataset(tuple(self.records[i] for i in indices), self.dim_vision, self.dim_language)
