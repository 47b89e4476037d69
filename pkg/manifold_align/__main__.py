import argparse
import logging
import sys
from pathlib import Path

from utils import load_config_file, output_dir, parse_bool, results_db_path, setup_logger
from core import ConfigError, DatasetError, DimensionError, InvalidVectorError, NumericalError
from metrics import MetricError
from pipeline import RunConfig, cmd_ablate, cmd_compare, cmd_eval, cmd_synth, cmd_train, resolve_method
from procrustes import AblationFlags
from synth import SynthConfig
from triplet import TrainConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


def exit_code_for(error):
    if isinstance(error, ConfigError):
        return EXIT_USAGE
    if isinstance(error, (DatasetError, DimensionError, InvalidVectorError, MetricError, FileNotFoundError)):
        return EXIT_DATA
    if isinstance(error, NumericalError):
        return EXIT_NUMERICAL
    return 1


def run_synth(args):
    cfg = SynthConfig(
        n_classes=args.classes,
        per_class=args.per_class,
        latent_dim=args.latent_dim,
        dim_vision=args.dim_vision,
        dim_language=args.dim_language,
        class_separation=args.separation,
        noise_sigma=args.noise,
        nonlinearity=args.nonlinearity,
        seed=args.seed,
    )
    path = cmd_synth(cfg, args.out)
    logging.info(f"Synthetic dataset written: {path}")


def run_train(args):
    method, metric, mode = resolve_method(args.method, args.metric, args.mode)
    train_cfg = TrainConfig(
        margin=args.margin,
        metric=metric,
        embed_dim=args.embed_dim,
        batch_size=args.batch_size,
        max_epochs=args.epochs,
        triplets_per_epoch=args.triplets_per_epoch,
        patience=args.patience,
        seed=args.seed,
        mode=mode,
        learning_rate=args.learning_rate,
        negative_quantile=args.negative_quantile,
    )
    run = RunConfig(
        dataset=args.dataset,
        checkpoint=args.out or output_dir() / "checkpoints" / f"{method.value}.json",
        method=method,
        train=train_cfg,
        flags=AblationFlags(not args.no_translation, not args.no_scaling, not args.no_rotation),
        procrustes=not args.no_procrustes,
        test_fraction=args.test_fraction,
        val_fraction=args.val_fraction,
        seed=args.seed,
        cca_dim=args.cca_dim,
        cca_ridge=args.cca_ridge,
    )
    outcome = cmd_train(run)
    logging.info(f"Training finished after {len(outcome.history)} epoch(s): {outcome.checkpoint_path}")


def run_eval(args):
    report, paths = cmd_eval(
        args.checkpoint,
        args.dataset,
        out_dir=args.out,
        split=args.split,
        k=args.k,
        dc_samples=args.dc_samples,
        seed=args.seed,
        results_db=args.results_db or results_db_path(),
    )
    for path in paths:
        logging.info(f"Written: {path}")


def run_ablate(args):
    rows, path = cmd_ablate(
        args.checkpoint,
        args.dataset,
        out_dir=args.out,
        split=args.split,
        k=args.k,
        dc_samples=args.dc_samples,
        seed=args.seed,
        results_db=args.results_db or results_db_path(),
    )
    logging.info(f"Ablation table ({len(rows)} variants) saved: {path}")


def run_compare(args):
    db = args.results_db or results_db_path()
    if db is None:
        raise ConfigError("compare needs --results-db or MANIFOLD_ALIGN_RESULTS_DB")
    rows, path = cmd_compare(db, out_dir=args.out, method=args.method)
    logging.info(f"Comparison table ({len(rows)} row(s)) saved: {path}")


def add_evaluation_flags(sub):
    sub.add_argument("--checkpoint", type=Path, required=True, help="Checkpoint written by `train`")
    sub.add_argument("--dataset", type=Path, required=True, help="Dataset file (JSON Lines)")
    sub.add_argument("--out", type=Path, help="Directory for reports and CSVs (default: <output>/reports)")
    sub.add_argument("--split", choices=["test", "train", "all"], default="test", help="Portion to evaluate")
    sub.add_argument("--k", type=int, default=5, help="Neighbours for KNN accuracy")
    sub.add_argument("--dc-samples", type=int, default=10000, help="Sampled pairs for distance correlation")
    sub.add_argument("--seed", type=int, help="Sampling seed (default: the training seed)")
    sub.add_argument("--results-db", type=Path, help="Append results to this SQLite registry")


def build_parser():
    arg_parser = argparse.ArgumentParser(
        prog="manifold_align",
        description="Align vision and language feature vectors into one shared metric space.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    arg_parser.add_argument("--config", type=Path, help="Optional KEY=value file; flags override its values")
    arg_parser.add_argument("--log-level", help="Logging level (default: MANIFOLD_ALIGN_LOG_LEVEL or INFO)")
    subparsers = arg_parser.add_subparsers(dest="command", required=True)

    synth = subparsers.add_parser("synth", help="Generate a synthetic paired dataset",
                                  formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    synth.add_argument("--out", type=Path, required=True, help="Output dataset file")
    synth.add_argument("--classes", type=int, default=5)
    synth.add_argument("--per-class", type=int, default=40)
    synth.add_argument("--latent-dim", type=int, default=8)
    synth.add_argument("--dim-vision", type=int, default=64)
    synth.add_argument("--dim-language", type=int, default=48)
    synth.add_argument("--separation", type=float, default=2.0, help="Radius of the class-center sphere")
    synth.add_argument("--noise", type=float, default=0.3, help="Latent noise standard deviation")
    synth.add_argument("--nonlinearity", choices=["linear", "tanh"], default="tanh")
    synth.add_argument("--seed", type=int, default=0)
    synth.set_defaults(handler=run_synth)

    train = subparsers.add_parser("train", help="Train an alignment method and write a checkpoint",
                                  formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    train.add_argument("--dataset", type=Path, required=True)
    train.add_argument("--out", type=Path, help="Checkpoint path (default: <output>/checkpoints/<method>.json)")
    train.add_argument("--method", default="triplet",
                       choices=["triplet", "triplet-euclidean", "triplet-unsupervised", "cosine-baseline", "cca"])
    train.add_argument("--metric", choices=["cosine", "euclidean"], help="Override the method's distance")
    train.add_argument("--mode", choices=["supervised", "unsupervised"], help="Override the method's triplet mode")
    train.add_argument("--embed-dim", type=int, default=1024)
    train.add_argument("--margin", type=float, default=0.4)
    train.add_argument("--batch-size", type=int, default=64)
    train.add_argument("--epochs", type=int, default=300, help="Maximum epochs")
    train.add_argument("--triplets-per-epoch", type=int, help="Default: 4 x training pairs")
    train.add_argument("--patience", type=int, default=10)
    train.add_argument("--learning-rate", type=float, default=1e-3)
    train.add_argument("--negative-quantile", type=float, default=0.25)
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--test-fraction", type=float, default=0.2)
    train.add_argument("--val-fraction", type=float, default=0.1)
    train.add_argument("--cca-dim", type=int, help="CCA output dimension (default: min(64, dims, n-1))")
    train.add_argument("--cca-ridge", type=float, default=1e-6)
    train.add_argument("--no-procrustes", action="store_true", help="Skip Procrustes entirely")
    train.add_argument("--no-translation", action="store_true")
    train.add_argument("--no-scaling", action="store_true")
    train.add_argument("--no-rotation", action="store_true")
    train.set_defaults(handler=run_train)

    evaluate = subparsers.add_parser("eval", help="Evaluate a checkpoint",
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    add_evaluation_flags(evaluate)
    evaluate.set_defaults(handler=run_eval)

    ablate = subparsers.add_parser("ablate", help="Procrustes component ablation table",
                                   formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    add_evaluation_flags(ablate)
    ablate.set_defaults(handler=run_ablate)

    compare = subparsers.add_parser("compare", help="Tabulate stored results per method")
    compare.add_argument("--results-db", type=Path)
    compare.add_argument("--out", type=Path)
    compare.add_argument("--method", help="List the stored runs of one method instead of averaging")
    compare.set_defaults(handler=run_compare)
    return arg_parser


def apply_config_file(arg_parser, argv):
    """Make config file values the defaults of the chosen subcommand."""
    # every global option goes here, or rest[0] is not the subcommand
    pre_parser = argparse.ArgumentParser(add_help=False)
    pre_parser.add_argument("--config", type=Path)
    pre_parser.add_argument("--log-level")
    known, rest = pre_parser.parse_known_args(argv)
    if known.config is None or not rest:
        return
    values = load_config_file(known.config)

    subparsers = next(a for a in arg_parser._actions if isinstance(a, argparse._SubParsersAction))
    sub = subparsers.choices.get(rest[0])
    if sub is None:
        return
    defaults = {}
    for action in sub._actions:
        if action.dest in values:
            value = values[action.dest]
            # store_true flags take no argument, so their config value is a boolean
            defaults[action.dest] = parse_bool(value) if action.nargs == 0 else value
            action.required = False
    sub.set_defaults(**defaults)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    arg_parser = build_parser()
    try:
        apply_config_file(arg_parser, argv)
    except (FileNotFoundError, ValueError) as e:
        arg_parser.error(str(e))
    args = arg_parser.parse_args(argv)
    setup_logger(args.log_level)

    try:
        args.handler(args)
    except KeyboardInterrupt:
        print("\nProcess interrupted by user. Exiting...")
        return EXIT_OK
    except Exception as e:
        code = exit_code_for(e)
        if code == 1:
            logging.exception("Unexpected error occurred")
        else:
            logging.error(f"{args.command} failed: {e}")
        return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
