from dataclasses import dataclass, field, replace
from enum import Enum
from functools import singledispatch

import numpy as np

from baselines import LinearMap, apply_linear
from core import Dataset, DimensionError, DistanceMetric, rowwise_distance
from metrics import AlignedTestSet
from netalign import AlignmentHead, forward
from procrustes import ProcrustesTransform, align_language, align_vision
from utils import config_fingerprint


class Method(str, Enum):
    TRIPLET = "triplet"
    TRIPLET_EUCLIDEAN = "triplet-euclidean"
    TRIPLET_UNSUPERVISED = "triplet-unsupervised"
    COSINE_BASELINE = "cosine-baseline"
    CCA = "cca"

    @property
    def is_triplet(self):
        return self.value.startswith("triplet")


@singledispatch
def embed(embedder, X):
    raise TypeError(f"unsupported embedder type: {type(embedder).__name__}")


@embed.register
def _(embedder: AlignmentHead, X):
    return forward(embedder, X)


@embed.register
def _(embedder: LinearMap, X):
    return apply_linear(embedder, X)


@dataclass(frozen=True, eq=False)
class AlignedModel:
    """Both domain embedders, the Procrustes transform and the run that produced them."""

    method: Method
    vision: object
    language: object
    transform: ProcrustesTransform
    metric: DistanceMetric
    config: dict = field(default_factory=dict)

    @property
    def dim_vision(self):
        return self.vision.in_dim

    @property
    def dim_language(self):
        return self.language.in_dim

    @property
    def embed_dim(self):
        return self.vision.out_dim

    @property
    def fingerprint(self):
        return config_fingerprint({"method": self.method.value, **self.config})

    def check_dataset(self, ds: Dataset):
        if (ds.dim_vision, ds.dim_language) != (self.dim_vision, self.dim_language):
            raise DimensionError(
                f"checkpoint expects (vision={self.dim_vision}, language={self.dim_language}) "
                f"but data has (vision={ds.dim_vision}, language={ds.dim_language})"
            )

    def embed_vision(self, X):
        return embed(self.vision, X)

    def embed_language(self, X):
        return embed(self.language, X)

    def with_transform(self, transform: ProcrustesTransform):
        return replace(self, transform=transform)

    def aligned_rows(self, ds: Dataset):
        self.check_dataset(ds)
        vision = align_vision(self.transform, self.embed_vision(ds.vision))
        language = align_language(self.transform, self.embed_language(ds.language))
        return vision, language

    def align(self, ds: Dataset) -> AlignedTestSet:
        vision, language = self.aligned_rows(ds)
        return AlignedTestSet(vision, language, tuple(ds.labels), tuple(ds.pair_ids))

    def pair_distances(self, ds: Dataset) -> np.ndarray:
        """Distance between each pair's two aligned embeddings."""
        vision, language = self.aligned_rows(ds)
        return rowwise_distance(vision, language, self.metric)
