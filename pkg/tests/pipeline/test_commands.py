import numpy as np
import pytest

from core import ConfigError, DatasetError, DimensionError, load_dataset
from pipeline import (
    ABLATION_VARIANTS,
    Method,
    RunConfig,
    cmd_ablate,
    cmd_compare,
    cmd_eval,
    cmd_synth,
    cmd_train,
    load_checkpoint,
    resolve_method,
)
from procrustes import AblationFlags, align_language, align_vision, fit_procrustes
from synth import SynthConfig
from triplet import TrainConfig, TrainingMode

TINY = SynthConfig(n_classes=3, per_class=10, latent_dim=3, dim_vision=8, dim_language=6, seed=1)


@pytest.fixture
def dataset_path(tmp_path):
    return cmd_synth(TINY, tmp_path / "data" / "tiny.jsonl")


def run_config(dataset_path, checkpoint, method="triplet", **overrides):
    method, metric, mode = resolve_method(method, overrides.pop("metric", None), overrides.pop("mode", None))
    train_cfg = TrainConfig(metric=metric, mode=mode, embed_dim=8, max_epochs=3, batch_size=16, seed=2)
    return RunConfig(dataset_path, checkpoint, method=method, train=train_cfg, seed=2, **overrides)


@pytest.fixture
def trained(dataset_path, tmp_path):
    return cmd_train(run_config(dataset_path, tmp_path / "ckpt" / "triplet.json"))


def test_synth_file(tmp_path):
    path = cmd_synth(SynthConfig(n_classes=5, per_class=40, seed=1), tmp_path / "d.jsonl")
    rerun = cmd_synth(SynthConfig(n_classes=5, per_class=40, seed=1), tmp_path / "again.jsonl")

    assert len(path.read_text(encoding="utf-8").splitlines()) == 200
    assert path.read_bytes() == rerun.read_bytes()


@pytest.mark.parametrize(
    "method, metric, mode",
    [
        ("triplet", "cosine", "supervised"),
        ("triplet-euclidean", "euclidean", "supervised"),
        ("triplet-unsupervised", "cosine", "unsupervised"),
        ("cosine-baseline", "cosine", "unsupervised"),
        ("cca", "cosine", "unsupervised"),
    ],
)
def test_resolve_method_defaults(method, metric, mode):
    assert resolve_method(method) == (Method(method), metric, mode)


def test_resolve_method_overrides():
    assert resolve_method("triplet", "euclidean", "unsupervised")[1:] == ("euclidean", TrainingMode.UNSUPERVISED)


@pytest.mark.parametrize("args", [("sgd",), ("cosine-baseline", "euclidean"), ("triplet", None, "semi")])
def test_resolve_method_rejects(args):
    with pytest.raises(ConfigError):
        resolve_method(*args)


def test_checkpoint_round_trip(trained, dataset_path):
    ds = load_dataset(dataset_path)

    loaded = load_checkpoint(trained.checkpoint_path)

    np.testing.assert_array_equal(loaded.embed_vision(ds.vision), trained.model.embed_vision(ds.vision))
    np.testing.assert_array_equal(loaded.embed_language(ds.language), trained.model.embed_language(ds.language))
    np.testing.assert_array_equal(loaded.transform.R, trained.model.transform.R)
    assert loaded.fingerprint == trained.model.fingerprint
    assert trained.history_path.name == "triplet.history.jsonl"
    assert len(trained.history_path.read_text().splitlines()) == len(trained.history)


def test_training_is_byte_reproducible(dataset_path, tmp_path):
    first = cmd_train(run_config(dataset_path, tmp_path / "a" / "m.json"))
    second = cmd_train(run_config(dataset_path, tmp_path / "b" / "m.json"))

    assert first.checkpoint_path.read_bytes() == second.checkpoint_path.read_bytes()
    assert first.history_path.read_bytes() == second.history_path.read_bytes()


def test_no_procrustes_stores_identity(dataset_path, tmp_path):
    outcome = cmd_train(run_config(dataset_path, tmp_path / "m.json", procrustes=False))

    model = load_checkpoint(outcome.checkpoint_path)
    assert model.transform.flags == AblationFlags.disabled()
    np.testing.assert_array_equal(model.transform.R, np.eye(8))


@pytest.mark.parametrize("method", ["triplet-euclidean", "triplet-unsupervised", "cosine-baseline", "cca"])
def test_every_method_trains_and_evaluates(dataset_path, tmp_path, method):
    outcome = cmd_train(run_config(dataset_path, tmp_path / f"{method}.json", method))

    report, paths = cmd_eval(outcome.checkpoint_path, dataset_path, out_dir=tmp_path / "reports", k=3, dc_samples=100)

    assert 0.0 < report.mrr <= 1.0
    assert all(path.is_file() for path in paths)


def test_cca_dimension(dataset_path, tmp_path):
    outcome = cmd_train(run_config(dataset_path, tmp_path / "cca.json", "cca", cca_dim=2))

    assert outcome.model.embed_dim == 2
    assert outcome.history == []


def test_unlabeled_data(tmp_path):
    rng = np.random.default_rng(0)
    path = tmp_path / "unlabeled.jsonl"
    path.write_text(
        "".join(
            f'{{"pair_id": "u{i}", "vision": {rng.standard_normal(4).tolist()}, '
            f'"language": {rng.standard_normal(3).tolist()}}}\n'
            for i in range(20)
        ),
        encoding="utf-8",
    )

    outcome = cmd_train(run_config(path, tmp_path / "u.json", mode="unsupervised"))
    assert outcome.checkpoint_path.is_file()

    with pytest.raises(ConfigError):
        cmd_train(run_config(path, tmp_path / "s.json", mode="supervised"))


def test_eval_is_reproducible_and_read_only(trained, dataset_path, tmp_path):
    before = (trained.checkpoint_path.read_bytes(), dataset_path.read_bytes())

    _, first = cmd_eval(trained.checkpoint_path, dataset_path, out_dir=tmp_path / "r1", k=3, dc_samples=200)
    _, second = cmd_eval(trained.checkpoint_path, dataset_path, out_dir=tmp_path / "r2", k=3, dc_samples=200)

    assert [p.read_bytes() for p in first] == [p.read_bytes() for p in second]
    assert (trained.checkpoint_path.read_bytes(), dataset_path.read_bytes()) == before
    assert first[0].name == "triplet_test.report.txt"


@pytest.mark.parametrize("split, size", [("test", 6), ("train", 24), ("all", 30)])
def test_eval_split(trained, dataset_path, tmp_path, split, size):
    report, _ = cmd_eval(trained.checkpoint_path, dataset_path, out_dir=tmp_path, split=split, k=3, dc_samples=50)

    assert len(report.per_task_auc) + len(report.skipped_tasks) == size


def test_eval_rejects_bad_split(trained, dataset_path, tmp_path):
    with pytest.raises(ConfigError):
        cmd_eval(trained.checkpoint_path, dataset_path, out_dir=tmp_path, split="val")


def test_eval_dimension_mismatch(trained, tmp_path):
    other = cmd_synth(SynthConfig(n_classes=3, per_class=4, dim_vision=5, dim_language=6), tmp_path / "other.jsonl")

    with pytest.raises(DimensionError) as excinfo:
        cmd_eval(trained.checkpoint_path, other, out_dir=tmp_path)
    assert "vision=8" in str(excinfo.value) and "vision=5" in str(excinfo.value)


def test_ablation_table_shape(trained, dataset_path, tmp_path):
    rows, path = cmd_ablate(trained.checkpoint_path, dataset_path, out_dir=tmp_path, k=3, dc_samples=100)

    assert [row["variant"] for row in rows] == [name for name, _ in ABLATION_VARIANTS]
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "variant,mrr,knn_accuracy,distance_correlation"
    assert len(lines) == 5


def test_disabled_transform_equals_raw_heads(trained, dataset_path):
    ds = load_dataset(dataset_path)
    model = trained.model
    Ev, El = model.embed_vision(ds.vision), model.embed_language(ds.language)

    t = fit_procrustes(Ev, El, AblationFlags.disabled())

    np.testing.assert_array_equal(align_vision(t, Ev), Ev)
    np.testing.assert_array_equal(align_language(t, El), El)


def test_ablation_needs_procrustes(dataset_path, tmp_path):
    outcome = cmd_train(run_config(dataset_path, tmp_path / "m.json", procrustes=False))

    with pytest.raises(ConfigError):
        cmd_ablate(outcome.checkpoint_path, dataset_path, out_dir=tmp_path)


def test_results_registry_and_compare(trained, dataset_path, tmp_path):
    db = tmp_path / "results.db"
    cmd_eval(trained.checkpoint_path, dataset_path, out_dir=tmp_path, k=3, dc_samples=50, results_db=db)
    cmd_ablate(trained.checkpoint_path, dataset_path, out_dir=tmp_path, k=3, dc_samples=50, results_db=db)

    rows, path = cmd_compare(db, out_dir=tmp_path)

    assert {(row["method"], row["variant"]) for row in rows} == {
        ("triplet", "with-procrustes"),
        ("triplet", "full"),
        ("triplet", "no-translation"),
        ("triplet", "no-scaling"),
        ("triplet", "no-rotation"),
    }
    assert path.name == "comparison.csv"


def test_compare_lists_runs_of_one_method(trained, dataset_path, tmp_path):
    db = tmp_path / "results.db"
    cmd_eval(trained.checkpoint_path, dataset_path, out_dir=tmp_path, k=3, dc_samples=50, results_db=db)
    cmd_eval(trained.checkpoint_path, dataset_path, out_dir=tmp_path, k=3, dc_samples=50, results_db=db, seed=9)

    rows, path = cmd_compare(db, out_dir=tmp_path, method="triplet")

    assert [row["variant"] for row in rows] == ["with-procrustes", "with-procrustes"]
    assert rows[0]["id"] < rows[1]["id"]
    assert path.name == "triplet_runs.csv"
    with pytest.raises(DatasetError, match="cca"):
        cmd_compare(db, out_dir=tmp_path, method="cca")


def test_compare_missing_database(tmp_path):
    with pytest.raises(FileNotFoundError):
        cmd_compare(tmp_path / "none.db", out_dir=tmp_path)
