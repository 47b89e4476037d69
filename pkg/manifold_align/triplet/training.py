import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

import numpy as np

from core import ConfigError, Dataset, DatasetError, DimensionError, DistanceMetric, InvalidVectorError, NumericalError
from netalign import AdamState, adam_step, backward, forward, init_head

from .loss import batch_triplet_loss
from .sampling import Domain, SupervisedSampler, UnsupervisedSampler


class TrainingMode(str, Enum):
    SUPERVISED = "supervised"
    UNSUPERVISED = "unsupervised"


class TrainingDivergedError(NumericalError):
    """Training produced a non-finite loss"""

    pass


@dataclass
class TrainConfig:
    margin: float = 0.4
    metric: DistanceMetric = DistanceMetric.COSINE
    embed_dim: int = 1024
    batch_size: int = 64
    max_epochs: int = 300
    triplets_per_epoch: Optional[int] = None  # None: 4 x training pairs
    patience: int = 10
    seed: int = 0
    mode: TrainingMode = TrainingMode.SUPERVISED
    learning_rate: float = 1e-3
    negative_quantile: float = 0.25

    def __post_init__(self):
        try:
            self.metric = DistanceMetric(self.metric)
            self.mode = TrainingMode(self.mode)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if self.margin < 0:
            raise ConfigError(f"margin must be non-negative, got {self.margin}")
        if self.embed_dim < 1:
            raise ConfigError(f"embed_dim must be >= 1, got {self.embed_dim}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.max_epochs < 0 or self.patience < 1:
            raise ConfigError("max_epochs must be >= 0 and patience >= 1")
        if self.triplets_per_epoch is not None and self.triplets_per_epoch < 1:
            raise ConfigError("triplets_per_epoch must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError(f"learning_rate must be positive, got {self.learning_rate}")
        if not 0 < self.negative_quantile < 1:
            raise ConfigError(f"negative_quantile must be in (0, 1), got {self.negative_quantile}")

    def to_dict(self):
        values = asdict(self)
        values["metric"] = self.metric.value
        values["mode"] = self.mode.value
        return values


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: Optional[float]


def child_seeds(seed, count):
    """Independent integer seeds derived from one run seed."""
    return [int(child.generate_state(1)[0]) for child in np.random.SeedSequence(seed).spawn(count)]


def chunked(items, size):
    for start in range(0, len(items), size):
        yield items[start:start + size]


def _embed_members(f_v, f_l, Xv, Xl, refs):
    index = np.array([ref.index for ref in refs], dtype=int)
    is_vision = np.array([ref.domain is Domain.VISION for ref in refs], dtype=bool)
    vision_rows = Xv[index[is_vision]]
    language_rows = Xl[index[~is_vision]]
    embedded = np.empty((len(refs), f_v.out_dim))
    embedded[is_vision] = forward(f_v, vision_rows)
    embedded[~is_vision] = forward(f_l, language_rows)
    return embedded, is_vision, vision_rows, language_rows


def batch_loss_and_gradients(f_v, f_l, Xv, Xl, triplets, margin, metric):
    """
    Mean triplet loss of a batch and its gradients for both heads. Vision
    members flow through f_v, language members through f_l.
    :return: (mean loss, HeadGradients for f_v, HeadGradients for f_l)
    """
    refs = [member for t in triplets for member in t.members]
    embedded, is_vision, vision_rows, language_rows = _embed_members(f_v, f_l, Xv, Xl, refs)
    losses, (grad_a, grad_p, grad_n) = batch_triplet_loss(
        embedded[0::3], embedded[1::3], embedded[2::3], margin, metric
    )

    grad = np.empty_like(embedded)
    grad[0::3], grad[1::3], grad[2::3] = grad_a, grad_p, grad_n
    grad /= len(triplets)
    grads_v, _ = backward(f_v, vision_rows, grad[is_vision])
    grads_l, _ = backward(f_l, language_rows, grad[~is_vision])
    return float(losses.mean()), grads_v, grads_l


def mean_triplet_loss(f_v, f_l, Xv, Xl, triplets, margin, metric) -> float:
    refs = [member for t in triplets for member in t.members]
    embedded = _embed_members(f_v, f_l, Xv, Xl, refs)[0]
    losses, _ = batch_triplet_loss(
        embedded[0::3], embedded[1::3], embedded[2::3], margin, metric, with_grad=False
    )
    return float(losses.mean())


def fit_heads(f_v, f_l, cfg, epoch_batches, objective, validation_loss, rng, label="triplet"):
    """
    Shared Adam loop with early stopping on the validation loss (training
    loss when validation_loss returns None). The heads of the best epoch are
    returned.
    :param epoch_batches: rng -> iterable of batches for one epoch
    :param objective: (f_v, f_l, batch) -> (loss, grads_v, grads_l)
    :param validation_loss: (f_v, f_l) -> float or None
    """
    state_v = AdamState.for_head(f_v, learning_rate=cfg.learning_rate)
    state_l = AdamState.for_head(f_l, learning_rate=cfg.learning_rate)
    history = []
    best_loss, best_heads, stale = np.inf, (f_v, f_l), 0

    for epoch in range(1, cfg.max_epochs + 1):
        batch_losses = []
        for batch_number, batch in enumerate(epoch_batches(rng), start=1):
            try:
                loss, grads_v, grads_l = objective(f_v, f_l, batch)
            except InvalidVectorError as e:
                raise TrainingDivergedError(f"{label}: epoch {epoch}, batch {batch_number}: {e}") from e
            if not np.isfinite(loss):
                raise TrainingDivergedError(
                    f"{label}: non-finite loss at epoch {epoch}, batch {batch_number}; "
                    f"try a smaller learning rate (currently {cfg.learning_rate})"
                )
            f_v, state_v = adam_step(f_v, grads_v, state_v)
            f_l, state_l = adam_step(f_l, grads_l, state_l)
            batch_losses.append(loss)

        train_loss = float(np.mean(batch_losses))
        val_loss = validation_loss(f_v, f_l)
        monitored = train_loss if val_loss is None else val_loss
        if not np.isfinite(monitored):
            raise TrainingDivergedError(f"{label}: non-finite validation loss at epoch {epoch}")
        history.append(EpochRecord(epoch, train_loss, val_loss))
        logging.info(f"[{label}] epoch {epoch}: train_loss={train_loss:.6f} val_loss={val_loss}")

        if monitored < best_loss:
            best_loss, best_heads, stale = monitored, (f_v, f_l), 0
        else:
            stale += 1
            if stale >= cfg.patience:
                logging.info(f"[{label}] no improvement for {cfg.patience} epochs, stopping at epoch {epoch}")
                break

    if history and best_heads[0] is not f_v:
        logging.info(f"[{label}] restoring heads from the best epoch (loss {best_loss:.6f})")
    return best_heads[0], best_heads[1], history


def check_dims(ds_train: Dataset, ds_val: Optional[Dataset]):
    if len(ds_train) == 0:
        raise DatasetError("training set is empty")
    if ds_val is not None and len(ds_val) and (
        ds_val.dim_vision != ds_train.dim_vision or ds_val.dim_language != ds_train.dim_language
    ):
        raise DimensionError(
            f"validation dims ({ds_val.dim_vision}, {ds_val.dim_language}) != "
            f"training dims ({ds_train.dim_vision}, {ds_train.dim_language})"
        )


def make_sampler(ds: Dataset, cfg: TrainConfig):
    if cfg.mode is TrainingMode.SUPERVISED:
        return SupervisedSampler(ds)
    return UnsupervisedSampler(ds, cfg.negative_quantile)


def _validation_triplets(ds_val, cfg, rng):
    if ds_val is None or len(ds_val) == 0:
        return None
    try:
        sampler = make_sampler(ds_val, cfg)
    except DatasetError as e:
        logging.warning(f"Validation split cannot form triplets ({e}); monitoring training loss")
        return None
    return [sampler.sample(rng) for _ in range(4 * len(ds_val))]


def train(ds_train: Dataset, ds_val: Optional[Dataset], cfg: TrainConfig):
    """
    Jointly train the vision and language heads on cross-domain triplets.
    :return: (f_v, f_l, history) where history is a list of EpochRecord
    """
    check_dims(ds_train, ds_val)
    sampler = make_sampler(ds_train, cfg)
    head_v_seed, head_l_seed, sample_seed, val_seed = child_seeds(cfg.seed, 4)
    f_v = init_head(ds_train.dim_vision, cfg.embed_dim, seed=head_v_seed)
    f_l = init_head(ds_train.dim_language, cfg.embed_dim, seed=head_l_seed)

    per_epoch = cfg.triplets_per_epoch or 4 * len(ds_train)
    Xv, Xl = ds_train.vision, ds_train.language
    val_triplets = _validation_triplets(ds_val, cfg, np.random.default_rng(val_seed))
    logging.info(
        f"Training triplet heads: mode={cfg.mode.value} metric={cfg.metric.value} "
        f"M={cfg.embed_dim} pairs={len(ds_train)} triplets/epoch={per_epoch}"
    )

    def epoch_batches(rng):
        triplets = [sampler.sample(rng) for _ in range(per_epoch)]
        return chunked(triplets, cfg.batch_size)

    def validation_loss(head_v, head_l):
        if val_triplets is None:
            return None
        return mean_triplet_loss(
            head_v, head_l, ds_val.vision, ds_val.language, val_triplets, cfg.margin, cfg.metric
        )

    def objective(head_v, head_l, batch):
        return batch_loss_and_gradients(head_v, head_l, Xv, Xl, batch, cfg.margin, cfg.metric)

    return fit_heads(
        f_v,
        f_l,
        cfg,
        epoch_batches,
        objective,
        validation_loss,
        np.random.default_rng(sample_seed),
        label=f"triplet-{cfg.metric.value}",
    )
