from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from core import ConfigError, Dataset, DistanceMetric
from procrustes import AblationFlags
from synth import SynthConfig
from triplet import TrainConfig, TrainingMode

from .model import Method

METHOD_DEFAULTS = {
    Method.TRIPLET: (DistanceMetric.COSINE, TrainingMode.SUPERVISED),
    Method.TRIPLET_EUCLIDEAN: (DistanceMetric.EUCLIDEAN, TrainingMode.SUPERVISED),
    Method.TRIPLET_UNSUPERVISED: (DistanceMetric.COSINE, TrainingMode.UNSUPERVISED),
    Method.COSINE_BASELINE: (DistanceMetric.COSINE, TrainingMode.UNSUPERVISED),
    Method.CCA: (DistanceMetric.COSINE, TrainingMode.UNSUPERVISED),
}


def resolve_method(method, metric=None, mode=None):
    """
    Method name sets the default metric and mode; explicit values win.
    :return: (Method, DistanceMetric, TrainingMode)
    """
    try:
        method = Method(method)
        default_metric, default_mode = METHOD_DEFAULTS[method]
        metric = DistanceMetric(metric) if metric is not None else default_metric
        mode = TrainingMode(mode) if mode is not None else default_mode
    except ValueError as e:
        raise ConfigError(str(e)) from e
    if method is Method.COSINE_BASELINE and metric is not DistanceMetric.COSINE:
        raise ConfigError("the cosine baseline is defined with cosine distance only")
    return method, metric, mode


@dataclass
class RunConfig:
    """Everything one `train` invocation needs."""

    dataset: Path
    checkpoint: Path
    method: Method = Method.TRIPLET
    train: TrainConfig = field(default_factory=TrainConfig)
    flags: AblationFlags = field(default_factory=AblationFlags)
    procrustes: bool = True
    test_fraction: float = 0.2
    val_fraction: float = 0.1
    seed: int = 0
    cca_dim: Optional[int] = None
    cca_ridge: float = 1e-6
    synth: Optional[SynthConfig] = None

    def __post_init__(self):
        self.dataset = Path(self.dataset)
        self.checkpoint = Path(self.checkpoint)
        try:
            self.method = Method(self.method)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if not 0 < self.test_fraction < 1:
            raise ConfigError(f"test_fraction must be in (0, 1), got {self.test_fraction}")
        if not 0 <= self.val_fraction < 1:
            raise ConfigError(f"val_fraction must be in [0, 1), got {self.val_fraction}")
        if self.cca_dim is not None and self.cca_dim < 1:
            raise ConfigError(f"cca_dim must be >= 1, got {self.cca_dim}")
        if self.cca_ridge < 0:
            raise ConfigError(f"cca_ridge must be >= 0, got {self.cca_ridge}")

    @property
    def history_path(self):
        return self.checkpoint.with_name(self.checkpoint.stem + ".history.jsonl")

    def validate_for(self, ds: Dataset):
        """Method-specific checks that need the data."""
        if self.method.is_triplet and self.train.mode is TrainingMode.SUPERVISED and not ds.is_labeled:
            raise ConfigError(
                f"method {self.method.value} in supervised mode needs a class label on every record; "
                "use --mode unsupervised for unlabeled data"
            )

    def to_dict(self):
        """Serializable record stored in the checkpoint; paths are left out so reruns match byte for byte."""
        values = {
            "method": self.method.value,
            "train": self.train.to_dict(),
            "flags": self.flags.to_dict(),
            "procrustes": self.procrustes,
            "test_fraction": self.test_fraction,
            "val_fraction": self.val_fraction,
            "seed": self.seed,
            "cca_dim": self.cca_dim,
            "cca_ridge": self.cca_ridge,
        }
        if self.synth is not None:
            values["synth"] = self.synth.to_dict()
        return values
