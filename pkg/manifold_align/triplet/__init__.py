from .sampling import (
    Domain,
    FarNegativeTable,
    MemberRef,
    SupervisedSampler,
    Triplet,
    UnsupervisedSampler,
    build_negative_table,
    far_negative_count,
    sample_triplet_supervised,
    sample_triplet_unsupervised,
)
from .loss import batch_triplet_loss, triplet_loss
from .training import (
    EpochRecord,
    TrainConfig,
    TrainingDivergedError,
    TrainingMode,
    batch_loss_and_gradients,
    check_dims,
    child_seeds,
    chunked,
    fit_heads,
    mean_triplet_loss,
    train,
)

__all__ = [
    "Domain",
    "FarNegativeTable",
    "MemberRef",
    "SupervisedSampler",
    "Triplet",
    "UnsupervisedSampler",
    "build_negative_table",
    "far_negative_count",
    "sample_triplet_supervised",
    "sample_triplet_unsupervised",
    "batch_triplet_loss",
    "triplet_loss",
    "EpochRecord",
    "TrainConfig",
    "TrainingDivergedError",
    "TrainingMode",
    "batch_loss_and_gradients",
    "check_dims",
    "child_seeds",
    "chunked",
    "fit_heads",
    "mean_triplet_loss",
    "train",
]
