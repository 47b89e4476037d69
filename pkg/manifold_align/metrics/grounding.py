import logging
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from core import DistanceMetric, pairwise_distances

from .aligned import AlignedTestSet, MetricError


def auc(scores, labels) -> float:
    """Mann-Whitney AUC; tied positive/negative scores count one half."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise MetricError("scores and labels must be 1-D and of equal length")
    positives = int(labels.sum())
    negatives = labels.size - positives
    if positives == 0 or negatives == 0:
        raise MetricError("AUC needs at least one positive and one negative label")
    ranks = rankdata(scores)
    return float((ranks[labels].sum() - positives * (positives + 1) / 2.0) / (positives * negatives))


def compute_threshold(train_pair_distances) -> float:
    """Relevance threshold: mean of the training pair distances plus one sample standard deviation."""
    values = np.asarray(train_pair_distances, dtype=np.float64)
    if values.size < 2:
        raise MetricError("threshold needs at least 2 training distances")
    return float(values.mean() + values.std(ddof=1))


def f1_from_counts(tp, fp, fn) -> float:
    denominator = 2 * tp + fp + fn
    # nothing predicted and nothing relevant: perfect by convention
    return 1.0 if denominator == 0 else 2.0 * tp / denominator


@dataclass(frozen=True)
class GroundingResult:
    per_task_auc: list
    micro_f1: float
    macro_f1: float
    skipped_tasks: list = field(default_factory=list)

    @property
    def mean_auc(self):
        return float(np.mean([value for _, value in self.per_task_auc])) if self.per_task_auc else float("nan")


def grounded_language_eval(
    ts: AlignedTestSet, threshold: float, metric=DistanceMetric.COSINE, macro_average="task"
) -> GroundingResult:
    """
    Every description is one binary task over all images: an image is
    relevant when it shares the description's class, predicted relevant when
    its distance is below the threshold.
    :param macro_average: "task" averages per-description F1, "class" averages
        per-class F1 pooled over that class's descriptions
    """
    if len(ts) == 0:
        raise MetricError("cannot evaluate an empty test set")
    if np.isnan(threshold):
        raise MetricError("threshold is NaN")
    if macro_average not in ("task", "class"):
        raise MetricError(f"macro_average must be 'task' or 'class', got {macro_average!r}")

    distances = pairwise_distances(ts.language, ts.vision, metric)
    classes = ts.classes
    per_task_auc, skipped = [], []
    task_f1 = []
    class_counts = defaultdict(lambda: np.zeros(3, dtype=int))
    totals = np.zeros(3, dtype=int)

    for task in np.argsort(ts.tie_keys):
        relevant = classes == classes[task]
        predicted = distances[task] < threshold
        counts = np.array(
            [np.sum(predicted & relevant), np.sum(predicted & ~relevant), np.sum(~predicted & relevant)]
        )
        totals += counts
        class_counts[classes[task]] += counts
        task_f1.append(f1_from_counts(*counts))

        if relevant.all():
            skipped.append(ts.pair_ids[task])
            continue
        per_task_auc.append((ts.pair_ids[task], auc(-distances[task], relevant)))

    if skipped:
        logging.warning(f"{len(skipped)} description task(s) have no negative images; AUC skipped")

    if macro_average == "task":
        macro = float(np.mean(task_f1))
    else:
        macro = float(np.mean([f1_from_counts(*counts) for counts in class_counts.values()]))
    return GroundingResult(per_task_auc, f1_from_counts(*totals), macro, skipped)


def auc_cumulative_counts(aucs, grid=None):
    """Number of tasks scoring at most g, for every g in the grid (default 0.00..1.00)."""
    grid = np.linspace(0.0, 1.0, 101) if grid is None else np.asarray(grid, dtype=np.float64)
    ordered = np.sort(np.asarray(aucs, dtype=np.float64))
    return grid, np.searchsorted(ordered, grid, side="right")
