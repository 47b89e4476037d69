from dataclasses import dataclass

import numpy as np

from core import ConfigError, DimensionError


@dataclass(frozen=True, eq=False)
class AlignmentHead:
    """
    Feed-forward map from one domain's features into the shared space.
    Layers are (weight, bias) pairs with weight shaped (fan_in, fan_out);
    rows are samples, so a layer computes x @ W + b. ReLU on every layer
    but the last.
    """

    weights: tuple
    biases: tuple

    def __post_init__(self):
        weights = tuple(np.array(w, dtype=np.float64) for w in self.weights)
        biases = tuple(np.array(b, dtype=np.float64) for b in self.biases)
        if not weights or len(weights) != len(biases):
            raise DimensionError("head needs one bias per weight matrix")
        for position, (w, b) in enumerate(zip(weights, biases)):
            if w.ndim != 2 or b.shape != (w.shape[1],):
                raise DimensionError(f"layer {position}: weight {w.shape} incompatible with bias {b.shape}")
            if position and weights[position - 1].shape[1] != w.shape[0]:
                raise DimensionError(f"layer {position}: input width {w.shape[0]} does not chain")
            w.setflags(write=False)
            b.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "biases", biases)

    @property
    def in_dim(self):
        return self.weights[0].shape[0]

    @property
    def out_dim(self):
        return self.weights[-1].shape[1]

    @property
    def layer_shapes(self):
        return [w.shape for w in self.weights]

    def parameters(self):
        """Flat parameter list in (W0, b0, W1, b1, ...) order."""
        return [p for pair in zip(self.weights, self.biases) for p in pair]

    @classmethod
    def from_parameters(cls, params):
        return cls(tuple(params[0::2]), tuple(params[1::2]))


@dataclass(frozen=True, eq=False)
class HeadGradients:
    weights: tuple
    biases: tuple

    def parameters(self):
        return [p for pair in zip(self.weights, self.biases) for p in pair]


def init_head(in_dim: int, out_dim: int, seed: int) -> AlignmentHead:
    """
    Input → two hidden layers of width in_dim → output of width out_dim.
    Weights are Glorot-uniform, biases zero.
    """
    if in_dim < 1 or out_dim < 1:
        raise ConfigError(f"head dimensions must be positive, got in_dim={in_dim}, out_dim={out_dim}")

    rng = np.random.default_rng(seed)
    widths = [in_dim, in_dim, in_dim, out_dim]
    weights, biases = [], []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return AlignmentHead(tuple(weights), tuple(biases))


def _as_batch(head, x):
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    batch = x[None, :] if single else x
    if batch.ndim != 2 or batch.shape[1] != head.in_dim:
        raise DimensionError(f"input has dimension {batch.shape[-1]}, head expects {head.in_dim}")
    return batch, single


def _forward_with_memory(head, batch):
    # pre-activations of every layer, kept for the backward pass
    activations = [batch]
    pre_activations = []
    current = batch
    last = len(head.weights) - 1
    for position, (w, b) in enumerate(zip(head.weights, head.biases)):
        z = current @ w + b
        pre_activations.append(z)
        current = z if position == last else np.maximum(z, 0.0)
        activations.append(current)
    return activations, pre_activations


def forward(head: AlignmentHead, x) -> np.ndarray:
    """Embed one vector (1-D) or a batch of row vectors (2-D)."""
    batch, single = _as_batch(head, x)
    output = _forward_with_memory(head, batch)[0][-1]
    return output[0] if single else output


def backward(head: AlignmentHead, x, grad_output):
    """
    Gradients of sum(grad_output * forward(head, x)) with respect to every
    parameter and to x. Batched inputs sum parameter gradients over rows.
    :return: (HeadGradients, grad_input shaped like x)
    """
    batch, single = _as_batch(head, x)
    grad = np.asarray(grad_output, dtype=np.float64)
    grad = grad[None, :] if single else grad
    if grad.shape != (batch.shape[0], head.out_dim):
        raise DimensionError(f"grad_output shape {grad.shape} != {(batch.shape[0], head.out_dim)}")

    activations, pre_activations = _forward_with_memory(head, batch)
    grad_weights = [None] * len(head.weights)
    grad_biases = [None] * len(head.biases)
    last = len(head.weights) - 1

    for position in range(last, -1, -1):
        if position != last:
            grad = grad * (pre_activations[position] > 0)
        grad_weights[position] = activations[position].T @ grad
        grad_biases[position] = grad.sum(axis=0)
        grad = grad @ head.weights[position].T

    grad_input = grad[0] if single else grad
    return HeadGradients(tuple(grad_weights), tuple(grad_biases)), grad_input
