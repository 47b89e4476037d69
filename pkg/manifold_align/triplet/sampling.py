import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core import Dataset, DatasetError, DistanceMetric, pairwise_distances


class Domain(str, Enum):
    VISION = "vision"
    LANGUAGE = "language"


@dataclass(frozen=True)
class MemberRef:
    index: int
    domain: Domain


@dataclass(frozen=True)
class Triplet:
    anchor: MemberRef
    positive: MemberRef
    negative: MemberRef

    @property
    def members(self):
        return (self.anchor, self.positive, self.negative)


def _uniform_domain(rng):
    return Domain.VISION if rng.random() < 0.5 else Domain.LANGUAGE


class SupervisedSampler:
    """
    Cross-domain triplets from class labels: each member picks its domain
    uniformly and independently.
    """

    def __init__(self, ds: Dataset):
        if not ds.is_labeled:
            raise DatasetError("supervised triplets need a class label on every record")
        by_class = defaultdict(list)
        for index, label in enumerate(ds.labels):
            by_class[label].append(index)
        if len(by_class) < 2:
            raise DatasetError(f"supervised triplets need at least 2 classes, found {len(by_class)}")

        self.size = len(ds)
        self.labels = ds.labels
        self.members = {label: np.array(indices) for label, indices in by_class.items()}
        self.others = {
            label: np.array([i for i in range(self.size) if ds.labels[i] != label])
            for label in by_class
        }

    def sample(self, rng) -> Triplet:
        anchor = MemberRef(int(rng.integers(self.size)), _uniform_domain(rng))
        label = self.labels[anchor.index]

        positive_domain = _uniform_domain(rng)
        candidates = self.members[label]
        if positive_domain is anchor.domain:
            candidates = candidates[candidates != anchor.index]
            if candidates.size == 0:
                # singleton class: only the paired item in the other domain is left
                positive_domain = Domain.LANGUAGE if anchor.domain is Domain.VISION else Domain.VISION
                candidates = self.members[label]
        positive = MemberRef(int(rng.choice(candidates)), positive_domain)

        negative = MemberRef(int(rng.choice(self.others[label])), _uniform_domain(rng))
        return Triplet(anchor, positive, negative)


def sample_triplet_supervised(ds: Dataset, rng) -> Triplet:
    return SupervisedSampler(ds).sample(rng)


@dataclass(frozen=True, eq=False)
class FarNegativeTable:
    """For each pair, the pairs whose descriptions lie farthest from its own."""

    rows: tuple
    quantile: float

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, index):
        return self.rows[index]


def far_negative_count(n: int, quantile: float) -> int:
    if n < 2:
        return 0
    return max(1, math.floor(quantile * (n - 1) + 1e-9))


def build_negative_table(ds: Dataset, quantile: float = 0.25, metric=DistanceMetric.COSINE) -> FarNegativeTable:
    """
    Rank every other description by distance in the raw language feature
    space and keep the farthest ones; ties go to the smaller index.
    """
    if len(ds) == 0:
        raise DatasetError("cannot build a negative table for an empty dataset")
    if not 0 < quantile < 1:
        raise DatasetError(f"quantile must be in (0, 1), got {quantile}")

    n = len(ds)
    distances = pairwise_distances(ds.language, ds.language, metric)
    count = far_negative_count(n, quantile)
    indices = np.arange(n)
    rows = []
    for i in range(n):
        others = indices[indices != i]
        # lexsort: last key is primary -> largest distance first, then smaller index
        order = np.lexsort((others, -distances[i, others]))
        rows.append(others[order[:count]])
    return FarNegativeTable(tuple(rows), quantile)


def sample_triplet_unsupervised(ds: Dataset, table: FarNegativeTable, rng) -> Triplet:
    """Vision anchor, its own description as positive, a far description as negative."""
    if len(table) != len(ds):
        raise DatasetError(f"negative table covers {len(table)} pairs, dataset has {len(ds)}")
    index = int(rng.integers(len(ds)))
    row = table[index]
    if len(row) == 0:
        raise DatasetError(f"negative table row {index} is empty")
    return Triplet(
        MemberRef(index, Domain.VISION),
        MemberRef(index, Domain.LANGUAGE),
        MemberRef(int(rng.choice(row)), Domain.LANGUAGE),
    )


class UnsupervisedSampler:
    def __init__(self, ds: Dataset, quantile: float = 0.25):
        if len(ds) < 2:
            raise DatasetError("unsupervised triplets need at least 2 pairs")
        self.ds = ds
        self.table = build_negative_table(ds, quantile, DistanceMetric.COSINE)

    def sample(self, rng) -> Triplet:
        return sample_triplet_unsupervised(self.ds, self.table, rng)
