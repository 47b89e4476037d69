import logging
from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np

from core import ConfigError, Dataset, PairRecord


class Nonlinearity(str, Enum):
    LINEAR = "linear"
    TANH = "tanh"


@dataclass
class SynthConfig:
    n_classes: int = 5
    per_class: int = 40
    latent_dim: int = 8
    dim_vision: int = 64
    dim_language: int = 48
    class_separation: float = 2.0
    noise_sigma: float = 0.3
    nonlinearity: Nonlinearity = Nonlinearity.TANH
    seed: int = 0

    def __post_init__(self):
        try:
            self.nonlinearity = Nonlinearity(self.nonlinearity)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        for name in ("n_classes", "per_class", "latent_dim", "dim_vision", "dim_language"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.noise_sigma < 0:
            raise ConfigError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.class_separation <= 0:
            raise ConfigError(f"class_separation must be > 0, got {self.class_separation}")

    def to_dict(self):
        values = asdict(self)
        values["nonlinearity"] = self.nonlinearity.value
        return values


def class_name(index):
    return f"class_{index:02d}"


def _random_map(rng, latent_dim, out_dim):
    return rng.standard_normal((latent_dim, out_dim)) / np.sqrt(latent_dim)


def generate_latents(cfg: SynthConfig):
    """
    Latent points and their class labels, class by class.
    :return: (n x latent_dim array, list of labels)
    """
    rng = np.random.default_rng(cfg.seed)
    directions = rng.standard_normal((cfg.n_classes, cfg.latent_dim))
    centers = cfg.class_separation * directions / np.linalg.norm(directions, axis=1, keepdims=True)
    noise = cfg.noise_sigma * rng.standard_normal((cfg.n_classes * cfg.per_class, cfg.latent_dim))
    latents = np.repeat(centers, cfg.per_class, axis=0) + noise
    labels = [class_name(c) for c in range(cfg.n_classes) for _ in range(cfg.per_class)]
    return latents, labels


def generate(cfg: SynthConfig) -> Dataset:
    """Paired two-domain dataset: independent random maps of shared latent points."""
    latents, labels = generate_latents(cfg)
    # maps use their own stream so that latents do not depend on the domain widths
    map_rng = np.random.default_rng([cfg.seed, 1])
    vision = latents @ _random_map(map_rng, cfg.latent_dim, cfg.dim_vision)
    language = latents @ _random_map(map_rng, cfg.latent_dim, cfg.dim_language)
    if cfg.nonlinearity is Nonlinearity.TANH:
        vision = np.tanh(vision)
        language = np.tanh(language)

    records = tuple(
        PairRecord(f"pair_{index:05d}", vision[index], language[index], label)
        for index, label in enumerate(labels)
    )
    logging.info(
        f"Generated {len(records)} synthetic pairs: {cfg.n_classes} classes, "
        f"dims=({cfg.dim_vision}, {cfg.dim_language}), {cfg.nonlinearity.value}, seed={cfg.seed}"
    )
    return Dataset(records, cfg.dim_vision, cfg.dim_language)
