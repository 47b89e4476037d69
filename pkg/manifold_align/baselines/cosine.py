import logging

import numpy as np

from core import Dataset, DistanceMetric, rowwise_distance, rowwise_distance_grad
from netalign import backward, forward, init_head
from triplet import TrainConfig, check_dims, child_seeds, chunked, fit_heads


def pair_loss_and_gradients(f_v, f_l, Xv, Xl, indices):
    """Mean cosine distance between paired embeddings, with gradients for both heads."""
    vision_rows = Xv[indices]
    language_rows = Xl[indices]
    Ev = forward(f_v, vision_rows)
    El = forward(f_l, language_rows)
    losses = rowwise_distance(Ev, El, DistanceMetric.COSINE)
    grad_v, grad_l = rowwise_distance_grad(Ev, El, DistanceMetric.COSINE)
    grads_v, _ = backward(f_v, vision_rows, grad_v / len(indices))
    grads_l, _ = backward(f_l, language_rows, grad_l / len(indices))
    return float(losses.mean()), grads_v, grads_l


def mean_pair_distance(f_v, f_l, ds: Dataset) -> float:
    return float(rowwise_distance(forward(f_v, ds.vision), forward(f_l, ds.language), DistanceMetric.COSINE).mean())


def train_cosine_baseline(ds_train: Dataset, ds_val, cfg: TrainConfig):
    """
    Same heads and optimizer as the triplet method, but each pair only pulls
    its two embeddings together; there are no negatives. Labels are unused.
    :return: (f_v, f_l, history)
    """
    check_dims(ds_train, ds_val)
    head_v_seed, head_l_seed, shuffle_seed, _ = child_seeds(cfg.seed, 4)
    f_v = init_head(ds_train.dim_vision, cfg.embed_dim, seed=head_v_seed)
    f_l = init_head(ds_train.dim_language, cfg.embed_dim, seed=head_l_seed)
    Xv, Xl = ds_train.vision, ds_train.language
    has_validation = ds_val is not None and len(ds_val) > 0
    logging.info(f"Training cosine baseline: M={cfg.embed_dim} pairs={len(ds_train)}")

    def epoch_batches(rng):
        return chunked(rng.permutation(len(ds_train)), cfg.batch_size)

    def objective(head_v, head_l, batch):
        return pair_loss_and_gradients(head_v, head_l, Xv, Xl, batch)

    def validation_loss(head_v, head_l):
        return mean_pair_distance(head_v, head_l, ds_val) if has_validation else None

    return fit_heads(
        f_v,
        f_l,
        cfg,
        epoch_batches,
        objective,
        validation_loss,
        np.random.default_rng(shuffle_seed),
        label="cosine-baseline",
    )
