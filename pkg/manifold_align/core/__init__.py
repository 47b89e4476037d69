from .errors import (
    ConfigError,
    DatasetError,
    DimensionError,
    InvalidVectorError,
    ManifoldAlignError,
    NumericalError,
)
from .records import Dataset, PairRecord
from .distance import DistanceMetric, distance, pairwise_distances, rowwise_distance, rowwise_distance_grad
from .dataset_io import RecordParser, load_dataset, save_dataset
from .split import split_dataset

__all__ = [
    "ConfigError",
    "DatasetError",
    "DimensionError",
    "InvalidVectorError",
    "ManifoldAlignError",
    "NumericalError",
    "Dataset",
    "PairRecord",
    "DistanceMetric",
    "distance",
    "pairwise_distances",
    "rowwise_distance",
    "rowwise_distance_grad",
    "RecordParser",
    "load_dataset",
    "save_dataset",
    "split_dataset",
]
