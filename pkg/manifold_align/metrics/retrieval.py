from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core import DistanceMetric, pairwise_distances

from .aligned import AlignedTestSet, MetricError


class Direction(str, Enum):
    BOTH = "both"
    VISION_TO_LANGUAGE = "vision_to_language"
    LANGUAGE_TO_VISION = "language_to_vision"


def _rankings(ts: AlignedTestSet, metric, direction):
    """
    Yield (query class, gallery order) for every query: the gallery is the
    other domain, sorted by distance then pair_id.
    """
    if len(ts) == 0:
        raise MetricError("cannot evaluate an empty test set")
    direction = Direction(direction)
    distances = pairwise_distances(ts.vision, ts.language, metric)
    classes = ts.classes
    ties = ts.tie_keys

    if direction in (Direction.BOTH, Direction.VISION_TO_LANGUAGE):
        for i in range(len(ts)):
            yield classes[i], np.lexsort((ties, distances[i]))
    if direction in (Direction.BOTH, Direction.LANGUAGE_TO_VISION):
        for j in range(len(ts)):
            yield classes[j], np.lexsort((ties, distances[:, j]))


def mean_reciprocal_rank(ts: AlignedTestSet, metric=DistanceMetric.COSINE, direction=Direction.BOTH) -> float:
    """Mean over queries of 1 / rank of the nearest same-class item in the other domain."""
    classes = ts.classes
    reciprocal = []
    for query_class, order in _rankings(ts, metric, direction):
        hits = np.flatnonzero(classes[order] == query_class)
        reciprocal.append(1.0 / (hits[0] + 1))
    return float(np.mean(reciprocal))


def _vote(neighbor_classes):
    counts = Counter(neighbor_classes)
    best = max(counts.values())
    # tied majority goes to the class of the nearest member among the tied classes
    return next(c for c in neighbor_classes if counts[c] == best)


@dataclass(frozen=True)
class KnnAccuracy:
    vision_to_language: float
    language_to_vision: float
    overall: float


def _knn_direction(ts, k, metric, direction):
    classes = ts.classes
    correct = [
        _vote(list(classes[order[:k]])) == query_class
        for query_class, order in _rankings(ts, metric, direction)
    ]
    return float(np.mean(correct))


def knn_accuracy_by_direction(ts: AlignedTestSet, k: int = 5, metric=DistanceMetric.COSINE) -> KnnAccuracy:
    """
    Each query is labelled by majority vote over its k nearest items of the
    other domain.
    """
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    if len(ts) < k:
        raise MetricError(f"gallery of {len(ts)} items is smaller than k={k}")
    v2l = _knn_direction(ts, k, metric, Direction.VISION_TO_LANGUAGE)
    l2v = _knn_direction(ts, k, metric, Direction.LANGUAGE_TO_VISION)
    return KnnAccuracy(v2l, l2v, (v2l + l2v) / 2.0)


def knn_accuracy(ts: AlignedTestSet, k: int = 5, metric=DistanceMetric.COSINE) -> float:
    return knn_accuracy_by_direction(ts, k, metric).overall
