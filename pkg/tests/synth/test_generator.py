import numpy as np
import pytest
from sklearn.metrics import silhouette_score

from core import ConfigError
from synth import SynthConfig, class_name, generate, generate_latents


def test_counts_and_labels():
    ds = generate(SynthConfig(n_classes=5, per_class=40))

    assert len(ds) == 200
    assert ds.classes == [class_name(i) for i in range(5)]
    assert (ds.dim_vision, ds.dim_language) == (64, 48)
    assert ds.pair_ids[0] == "pair_00000"


def test_zero_noise_linear_classes_collapse():
    ds = generate(SynthConfig(n_classes=3, per_class=4, noise_sigma=0.0, nonlinearity="linear"))

    for c in range(3):
        rows = ds.vision[[i for i, label in enumerate(ds.labels) if label == class_name(c)]]
        np.testing.assert_array_equal(rows, np.repeat(rows[:1], 4, axis=0))


def test_generation_is_deterministic():
    cfg = SynthConfig(seed=3, per_class=5)

    first, second = generate(cfg), generate(cfg)

    np.testing.assert_array_equal(first.vision, second.vision)
    np.testing.assert_array_equal(first.language, second.language)
    assert not np.array_equal(first.vision, generate(SynthConfig(seed=4, per_class=5)).vision)


def test_latents_independent_of_domain_widths():
    narrow, _ = generate_latents(SynthConfig(dim_vision=3, dim_language=2))
    wide, _ = generate_latents(SynthConfig(dim_vision=90, dim_language=70))

    np.testing.assert_array_equal(narrow, wide)


def test_class_centers_on_sphere():
    latents, labels = generate_latents(SynthConfig(noise_sigma=0.0, class_separation=2.5))

    np.testing.assert_allclose(np.linalg.norm(latents, axis=1), 2.5)
    assert labels[:3] == [class_name(0)] * 3


def test_classes_are_separated():
    ds = generate(SynthConfig(seed=0))

    assert silhouette_score(ds.vision, ds.labels, metric="cosine") > 0.2
    assert silhouette_score(ds.language, ds.labels, metric="cosine") > 0.2


@pytest.mark.parametrize("seed", range(5))
def test_silhouette_grows_with_separation(seed):
    scores = []
    for separation in (0.5, 1.0, 2.0, 4.0):
        latents, labels = generate_latents(SynthConfig(class_separation=separation, seed=seed))
        scores.append(silhouette_score(latents, labels))

    assert all(low < high for low, high in zip(scores, scores[1:]))


@pytest.mark.parametrize(
    "kwargs",
    [{"n_classes": 0}, {"per_class": 0}, {"noise_sigma": -1.0}, {"class_separation": 0.0}, {"nonlinearity": "relu"}],
)
def test_invalid_config(kwargs):
    with pytest.raises(ConfigError):
        SynthConfig(**kwargs)
