from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from core import DistanceMetric

from .aligned import AlignedTestSet
from .correlation import distance_correlation_samples, pearson_or_zero
from .grounding import grounded_language_eval
from .retrieval import Direction, knn_accuracy_by_direction, mean_reciprocal_rank


@dataclass
class EvalReport:
    mrr: float
    knn_accuracy: float
    knn_vision_to_language: float
    knn_language_to_vision: float
    distance_correlation: float
    per_task_auc: list
    micro_f1: float
    macro_f1: float
    threshold: float
    fingerprint: str = ""
    config: dict = field(default_factory=dict)
    skipped_tasks: list = field(default_factory=list)
    dc_language: Optional[np.ndarray] = field(default=None, repr=False)
    dc_vision: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def mean_auc(self):
        return float(np.mean([value for _, value in self.per_task_auc])) if self.per_task_auc else float("nan")

    def summary(self):
        """Flat key/value view, in report order."""
        values = {
            "mrr": self.mrr,
            "knn_accuracy": self.knn_accuracy,
            "knn_vision_to_language": self.knn_vision_to_language,
            "knn_language_to_vision": self.knn_language_to_vision,
            "distance_correlation": self.distance_correlation,
            "mean_auc": self.mean_auc,
            "auc_tasks": len(self.per_task_auc),
            "auc_skipped_tasks": len(self.skipped_tasks),
            "micro_f1": self.micro_f1,
            "macro_f1": self.macro_f1,
            "threshold": self.threshold,
            "fingerprint": self.fingerprint,
        }
        values.update(_flatten("config", self.config))
        return values


def _flatten(prefix, value):
    if not isinstance(value, dict):
        return {prefix: value}
    flat = {}
    for key in sorted(value):
        flat.update(_flatten(f"{prefix}.{key}", value[key]))
    return flat


def evaluate(
    ts: AlignedTestSet,
    threshold: float,
    metric=DistanceMetric.COSINE,
    k: int = 5,
    dc_samples: int = 10000,
    seed: int = 0,
    mrr_direction=Direction.BOTH,
    macro_average="task",
    exhaustive_dc=False,
    fingerprint="",
    config=None,
) -> EvalReport:
    """Run every manifold and grounding metric on one aligned test set."""
    metric = DistanceMetric(metric)
    knn = knn_accuracy_by_direction(ts, k, metric)
    dc_language, dc_vision = distance_correlation_samples(ts, dc_samples, seed, metric, exhaustive_dc)
    grounding = grounded_language_eval(ts, threshold, metric, macro_average)
    return EvalReport(
        mrr=mean_reciprocal_rank(ts, metric, mrr_direction),
        knn_accuracy=knn.overall,
        knn_vision_to_language=knn.vision_to_language,
        knn_language_to_vision=knn.language_to_vision,
        distance_correlation=pearson_or_zero(dc_language, dc_vision),
        per_task_auc=grounding.per_task_auc,
        micro_f1=grounding.micro_f1,
        macro_f1=grounding.macro_f1,
        threshold=threshold,
        fingerprint=fingerprint,
        config=dict(config or {}),
        skipped_tasks=grounding.skipped_tasks,
        dc_language=dc_language,
        dc_vision=dc_vision,
    )


def manifold_metrics(ts: AlignedTestSet, metric=DistanceMetric.COSINE, k=5, dc_samples=10000, seed=0):
    """MRR, KNN accuracy and DC only, as used by the ablation table."""
    return {
        "mrr": mean_reciprocal_rank(ts, metric),
        "knn_accuracy": knn_accuracy_by_direction(ts, k, metric).overall,
        "distance_correlation": pearson_or_zero(*distance_correlation_samples(ts, dc_samples, seed, metric)),
    }
