from .head import AlignmentHead, HeadGradients, backward, forward, init_head
from .adam import AdamState, adam_step

__all__ = [
    "AlignmentHead",
    "HeadGradients",
    "backward",
    "forward",
    "init_head",
    "AdamState",
    "adam_step",
]
