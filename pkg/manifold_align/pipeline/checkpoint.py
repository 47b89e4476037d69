import json
import logging
from pathlib import Path

import numpy as np

from baselines import LinearMap
from core import DatasetError, DistanceMetric
from netalign import AlignmentHead
from procrustes import ProcrustesTransform

from .model import AlignedModel, Method

FORMAT = "manifold_align.checkpoint/1"


class CheckpointError(DatasetError):
    """Checkpoint file is missing fields or unreadable"""

    pass


def embedder_to_dict(embedder):
    if isinstance(embedder, AlignmentHead):
        return {
            "kind": "head",
            "in_dim": embedder.in_dim,
            "out_dim": embedder.out_dim,
            "weights": [w.tolist() for w in embedder.weights],
            "biases": [b.tolist() for b in embedder.biases],
        }
    if isinstance(embedder, LinearMap):
        return {"kind": "linear", "domain": embedder.domain, "W": embedder.W.tolist(), "mean": embedder.mean.tolist()}
    raise TypeError(f"cannot serialize embedder of type {type(embedder).__name__}")


def embedder_from_dict(payload):
    kind = payload["kind"]
    if kind == "head":
        weights = [np.asarray(w, dtype=np.float64).reshape(len(w), -1) for w in payload["weights"]]
        head = AlignmentHead(tuple(weights), tuple(np.asarray(b, dtype=np.float64) for b in payload["biases"]))
        if (head.in_dim, head.out_dim) != (payload["in_dim"], payload["out_dim"]):
            raise CheckpointError("head layer shapes disagree with the stored in_dim/out_dim")
        return head
    if kind == "linear":
        W = np.asarray(payload["W"], dtype=np.float64).reshape(len(payload["mean"]), -1)
        return LinearMap(W, np.asarray(payload["mean"], dtype=np.float64), payload["domain"])
    raise CheckpointError(f"unknown embedder kind {kind!r}")


def save_checkpoint(model: AlignedModel, path) -> Path:
    """Write the model as one JSON document; floats keep their exact repr."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "format": FORMAT,
        "method": model.method.value,
        "metric": model.metric.value,
        "fingerprint": model.fingerprint,
        "config": model.config,
        "vision": embedder_to_dict(model.vision),
        "language": embedder_to_dict(model.language),
        "transform": model.transform.to_dict(),
    }
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, sort_keys=True, separators=(",", ":"))
        handle.write("\n")
    logging.info(f"Checkpoint saved: {path}")
    return path


def load_checkpoint(path) -> AlignedModel:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as e:
        raise CheckpointError(f"checkpoint {path} is not valid JSON: {e.msg}") from e

    if payload.get("format") != FORMAT:
        raise CheckpointError(f"{path} is not a {FORMAT} file")
    try:
        model = AlignedModel(
            method=Method(payload["method"]),
            vision=embedder_from_dict(payload["vision"]),
            language=embedder_from_dict(payload["language"]),
            transform=ProcrustesTransform.from_dict(payload["transform"]),
            metric=DistanceMetric(payload["metric"]),
            config=payload.get("config", {}),
        )
    except (KeyError, ValueError, TypeError) as e:
        raise CheckpointError(f"checkpoint {path} is incomplete: {e}") from e

    logging.info(f"Checkpoint loaded: {path} (method={model.method.value}, fingerprint={model.fingerprint})")
    return model
