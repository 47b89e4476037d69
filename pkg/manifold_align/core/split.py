import logging
from collections import defaultdict

import numpy as np

from .errors import ConfigError, DatasetError
from .records import Dataset


def _test_count(size, test_fraction, at_least_one):
    count = int(round(size * test_fraction))
    if at_least_one:
        count = min(max(count, 1), size - 1)
    return count


def split_dataset(ds: Dataset, test_fraction: float, seed: int):
    """
    Deterministic train/test partition.
    Stratified by class when every record is labeled: each class keeps at
    least one record on each side.
    :return: (train, test), both in original record order
    """
    if not 0 < test_fraction < 1:
        raise ConfigError(f"test_fraction must be in (0, 1), got {test_fraction}")
    if len(ds) < 2:
        raise DatasetError("need at least 2 records to split")

    rng = np.random.default_rng(seed)
    test_indices = []

    if ds.is_labeled:
        by_class = defaultdict(list)
        for index, label in enumerate(ds.labels):
            by_class[label].append(index)
        for label in sorted(by_class):
            members = by_class[label]
            if len(members) < 2:
                raise DatasetError(f"class {label!r} has a single record and cannot be split")
            count = _test_count(len(members), test_fraction, at_least_one=True)
            chosen = rng.permutation(members)[:count]
            test_indices.extend(int(i) for i in chosen)
    else:
        count = _test_count(len(ds), test_fraction, at_least_one=True)
        test_indices = [int(i) for i in rng.permutation(len(ds))[:count]]

    test_set = set(test_indices)
    train = ds.subset([i for i in range(len(ds)) if i not in test_set])
    test = ds.subset(sorted(test_set))
    logging.info(f"Split {len(ds)} pairs into {len(train)} train / {len(test)} test (seed={seed})")
    return train, test
