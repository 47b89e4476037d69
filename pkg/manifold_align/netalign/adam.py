from dataclasses import dataclass, replace

import numpy as np

from core import ConfigError, DimensionError

from .head import AlignmentHead, HeadGradients


@dataclass(frozen=True, eq=False)
class AdamState:
    """Moment accumulators for one head, in AlignmentHead.parameters() order."""

    first_moment: tuple
    second_moment: tuple
    step: int = 0
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self):
        if self.step < 0:
            raise ConfigError("Adam step counter must be non-negative")
        if self.learning_rate <= 0:
            raise ConfigError(f"learning rate must be positive, got {self.learning_rate}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ConfigError("Adam betas must lie in [0, 1)")

    @classmethod
    def for_head(cls, head: AlignmentHead, **hyperparameters):
        zeros = tuple(np.zeros_like(p) for p in head.parameters())
        return cls(zeros, tuple(np.zeros_like(p) for p in zeros), **hyperparameters)


def adam_step(head: AlignmentHead, grads: HeadGradients, state: AdamState):
    """
    One bias-corrected Adam update.
    :return: (updated head, updated state); inputs are left untouched
    """
    params = head.parameters()
    grad_params = grads.parameters()
    if len(params) != len(grad_params) or len(params) != len(state.first_moment):
        raise DimensionError("gradient / optimizer state does not match the head's layers")

    step = state.step + 1
    correction1 = 1.0 - state.beta1**step
    correction2 = 1.0 - state.beta2**step
    new_params, first, second = [], [], []

    for p, g, m, v in zip(params, grad_params, state.first_moment, state.second_moment):
        if g.shape != p.shape or m.shape != p.shape:
            raise DimensionError(f"gradient shape {g.shape} != parameter shape {p.shape}")
        m = state.beta1 * m + (1.0 - state.beta1) * g
        v = state.beta2 * v + (1.0 - state.beta2) * g**2
        m_hat = m / correction1
        v_hat = v / correction2
        new_params.append(p - state.learning_rate * m_hat / (np.sqrt(v_hat) + state.eps))
        first.append(m)
        second.append(v)

    new_state = replace(state, first_moment=tuple(first), second_moment=tuple(second), step=step)
    return AlignmentHead.from_parameters(new_params), new_state
