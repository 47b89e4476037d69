import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from baselines import default_cca_dim, fit_cca, train_cosine_baseline
from core import ConfigError, Dataset, DatasetError, load_dataset, save_dataset, split_dataset
from metrics import compute_threshold, evaluate, manifold_metrics
from procrustes import AblationFlags, ProcrustesTransform, fit_procrustes
from reporting import ReportGenerator, ResultsDatabase, write_history
from synth import SynthConfig, generate
from triplet import train

from .checkpoint import load_checkpoint, save_checkpoint
from .model import AlignedModel, Method
from .run_config import RunConfig

ABLATION_VARIANTS = (
    ("full", AblationFlags(True, True, True)),
    ("no-translation", AblationFlags(False, True, True)),
    ("no-scaling", AblationFlags(True, False, True)),
    ("no-rotation", AblationFlags(True, True, False)),
)

SPLITS = ("test", "train", "all")


@dataclass
class TrainOutcome:
    model: AlignedModel
    checkpoint_path: Path
    history_path: Path
    history: list


def cmd_synth(cfg: SynthConfig, out) -> Path:
    """Generate a synthetic dataset and write it in the standard dataset format."""
    return save_dataset(generate(cfg), out)


def _validation_split(train_ds: Dataset, val_fraction: float, seed: int):
    if val_fraction == 0:
        return train_ds, None
    try:
        return split_dataset(train_ds, val_fraction, seed)
    except DatasetError as e:
        logging.warning(f"No validation split ({e}); early stopping uses the training loss")
        return train_ds, None


def _fit_embedders(run: RunConfig, train_ds: Dataset):
    if run.method is Method.CCA:
        k = run.cca_dim or default_cca_dim(train_ds.dim_vision, train_ds.dim_language, len(train_ds))
        vision_map, language_map, _ = fit_cca(train_ds.vision, train_ds.language, k, run.cca_ridge)
        return vision_map, language_map, []

    fit_ds, val_ds = _validation_split(train_ds, run.val_fraction, run.seed + 1)
    if run.method is Method.COSINE_BASELINE:
        return train_cosine_baseline(fit_ds, val_ds, run.train)
    return train(fit_ds, val_ds, run.train)


def cmd_train(run: RunConfig) -> TrainOutcome:
    """
    Train the selected method, fit Procrustes on the training embeddings and
    write the checkpoint plus the per-epoch history.
    """
    ds = load_dataset(run.dataset)
    run.validate_for(ds)
    train_ds, _ = split_dataset(ds, run.test_fraction, run.seed)

    vision, language, history = _fit_embedders(run, train_ds)
    model = AlignedModel(
        run.method, vision, language, ProcrustesTransform.identity(vision.out_dim), run.train.metric, run.to_dict()
    )
    if run.procrustes:
        transform = fit_procrustes(
            model.embed_vision(train_ds.vision), model.embed_language(train_ds.language), run.flags
        )
        model = model.with_transform(transform)
    else:
        logging.info("Procrustes disabled; checkpoint stores the identity transform")

    checkpoint_path = save_checkpoint(model, run.checkpoint)
    history_path = write_history(history, run.history_path)
    return TrainOutcome(model, checkpoint_path, history_path, history)


def _evaluation_data(model: AlignedModel, dataset_path, split):
    if split not in SPLITS:
        raise ConfigError(f"split must be one of {SPLITS}, got {split!r}")
    ds = load_dataset(dataset_path)
    model.check_dataset(ds)
    train_ds, test_ds = split_dataset(ds, model.config.get("test_fraction", 0.2), model.config.get("seed", 0))
    evaluated = {"test": test_ds, "train": train_ds, "all": ds}[split]
    return train_ds, evaluated


def _record_results(results_db, model, variant, metrics, dataset_path, split):
    if results_db is None:
        return
    with ResultsDatabase(results_db) as database:
        database.insert_result(
            model.method.value, variant, metrics, model.fingerprint, Path(dataset_path).name, split
        )


def cmd_eval(
    checkpoint,
    dataset,
    out_dir=None,
    split="test",
    k=5,
    dc_samples=10000,
    seed=None,
    name=None,
    results_db: Optional[Path] = None,
):
    """
    Evaluate a checkpoint: all manifold and grounding metrics plus the CSV
    artifacts. The relevance threshold comes from the training pairs.
    :return: (EvalReport, paths written)
    """
    model = load_checkpoint(checkpoint)
    train_ds, eval_ds = _evaluation_data(model, dataset, split)
    seed = model.config.get("seed", 0) if seed is None else seed

    threshold = compute_threshold(model.pair_distances(train_ds))
    report = evaluate(
        model.align(eval_ds),
        threshold,
        model.metric,
        k=k,
        dc_samples=dc_samples,
        seed=seed,
        fingerprint=model.fingerprint,
        config={"method": model.method.value, "split": split, "k": k, "dc_samples": dc_samples, "seed": seed},
    )
    logging.info(
        f"Evaluation ({model.method.value}, {split}): MRR={report.mrr:.4f} KNN={report.knn_accuracy:.4f} "
        f"DC={report.distance_correlation:.4f} microF1={report.micro_f1:.4f} macroF1={report.macro_f1:.4f}"
    )

    paths = ReportGenerator(out_dir).generate_reports(report, name or f"{model.method.value}_{split}")
    variant = "with-procrustes" if any(model.transform.flags.to_dict().values()) else "without-procrustes"
    summary = report.summary()
    _record_results(results_db, model, variant, summary, dataset, split)
    return report, paths


def cmd_ablate(
    checkpoint, dataset, out_dir=None, split="test", k=5, dc_samples=10000, seed=None, name=None, results_db=None
):
    """
    Refit Procrustes with one component disabled at a time, heads unchanged,
    and tabulate MRR / KNN / DC per variant.
    :return: (rows, table path)
    """
    model = load_checkpoint(checkpoint)
    if not any(model.transform.flags.to_dict().values()):
        raise ConfigError("checkpoint was trained without Procrustes; nothing to ablate")
    train_ds, eval_ds = _evaluation_data(model, dataset, split)
    seed = model.config.get("seed", 0) if seed is None else seed

    Ev = model.embed_vision(train_ds.vision)
    El = model.embed_language(train_ds.language)
    rows = []
    for variant, flags in ABLATION_VARIANTS:
        variant_model = model.with_transform(fit_procrustes(Ev, El, flags))
        metrics = manifold_metrics(variant_model.align(eval_ds), model.metric, k, dc_samples, seed)
        logging.info(f"Ablation {variant}: {metrics}")
        rows.append({"variant": variant, **metrics})
        _record_results(results_db, model, variant, metrics, dataset, split)

    table_path = ReportGenerator(out_dir).generate_ablation_table(rows, name or f"{model.method.value}_ablation")
    return rows, table_path


def cmd_compare(results_db, out_dir=None, name=None, method=None):
    """
    Average every stored metric per method and variant into one table, or,
    with `method`, list that method's stored runs one per row.
    """
    results_db = Path(results_db)
    if not results_db.is_file():
        raise FileNotFoundError(f"Results database not found: {results_db}")
    with ResultsDatabase(results_db) as database:
        logging.info(f"{database.get_total_count()} stored result(s) in {results_db}")
        rows = database.get_statistics() if method is None else database.get_results_by_method(method)
    if not rows:
        scope = "" if method is None else f" for method {method!r}"
        raise DatasetError(f"no results stored{scope} in {results_db}")
    fieldnames = list(rows[0].keys())
    name = name or ("comparison" if method is None else f"{method}_runs")
    return rows, ReportGenerator(out_dir).generate_table(rows, fieldnames, name)
