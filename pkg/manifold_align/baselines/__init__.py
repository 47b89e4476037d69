from .cca import LinearMap, apply_linear, default_cca_dim, fit_cca
from .cosine import mean_pair_distance, pair_loss_and_gradients, train_cosine_baseline

__all__ = [
    "LinearMap",
    "apply_linear",
    "default_cca_dim",
    "fit_cca",
    "mean_pair_distance",
    "pair_loss_and_gradients",
    "train_cosine_baseline",
]
