import logging

import numpy as np
from scipy.stats import pearsonr

from core import DistanceMetric, rowwise_distance

from .aligned import AlignedTestSet, MetricError


def distance_correlation_samples(
    ts: AlignedTestSet, n_samples: int = 10000, seed: int = 0, metric=DistanceMetric.COSINE, exhaustive=False
):
    """
    Distances between pairs of pairs, measured in each domain.
    Sampling draws (i, j), i != j, uniformly with replacement; exhaustive
    mode enumerates every unordered pair once.
    :return: (language distances, vision distances)
    """
    n = len(ts)
    if n < 2:
        raise MetricError("distance correlation needs at least 2 pairs")
    if exhaustive:
        i, j = np.triu_indices(n, k=1)
    else:
        if n_samples < 2:
            raise MetricError(f"n_samples must be >= 2, got {n_samples}")
        rng = np.random.default_rng(seed)
        i = rng.integers(n, size=n_samples)
        j = rng.integers(n - 1, size=n_samples)
        j = j + (j >= i)
    language = rowwise_distance(ts.language[i], ts.language[j], metric)
    vision = rowwise_distance(ts.vision[i], ts.vision[j], metric)
    return language, vision


def pearson_or_zero(x, y) -> float:
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        logging.warning("Distance correlation undefined for a constant distance list; reporting 0")
        return 0.0
    return float(pearsonr(x, y)[0])


def distance_correlation(
    ts: AlignedTestSet, n_samples: int = 10000, seed: int = 0, metric=DistanceMetric.COSINE, exhaustive=False
) -> float:
    """Pearson correlation between language-side and vision-side distances."""
    language, vision = distance_correlation_samples(ts, n_samples, seed, metric, exhaustive)
    return pearson_or_zero(language, vision)
