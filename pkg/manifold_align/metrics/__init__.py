from .aligned import AlignedTestSet, MetricError
from .retrieval import Direction, KnnAccuracy, knn_accuracy, knn_accuracy_by_direction, mean_reciprocal_rank
from .correlation import distance_correlation, distance_correlation_samples, pearson_or_zero
from .grounding import (
    GroundingResult,
    auc,
    auc_cumulative_counts,
    compute_threshold,
    f1_from_counts,
    grounded_language_eval,
)
from .report import EvalReport, evaluate, manifold_metrics

__all__ = [
    "AlignedTestSet",
    "MetricError",
    "Direction",
    "KnnAccuracy",
    "knn_accuracy",
    "knn_accuracy_by_direction",
    "mean_reciprocal_rank",
    "distance_correlation",
    "distance_correlation_samples",
    "pearson_or_zero",
    "GroundingResult",
    "auc",
    "auc_cumulative_counts",
    "compute_threshold",
    "f1_from_counts",
    "grounded_language_eval",
    "EvalReport",
    "evaluate",
    "manifold_metrics",
]
