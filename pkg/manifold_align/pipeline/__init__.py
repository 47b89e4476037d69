from .model import AlignedModel, Method, embed
from .checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from .run_config import RunConfig, resolve_method
from .commands import ABLATION_VARIANTS, TrainOutcome, cmd_ablate, cmd_compare, cmd_eval, cmd_synth, cmd_train

__all__ = [
    "AlignedModel",
    "Method",
    "embed",
    "CheckpointError",
    "load_checkpoint",
    "save_checkpoint",
    "RunConfig",
    "resolve_method",
    "ABLATION_VARIANTS",
    "TrainOutcome",
    "cmd_ablate",
    "cmd_compare",
    "cmd_eval",
    "cmd_synth",
    "cmd_train",
]
