import hashlib
import json
import os
from pathlib import Path

from dotenv import dotenv_values, load_dotenv

load_dotenv()

TRUE_VALUES = {"1", "true", "yes", "on"}
FALSE_VALUES = {"0", "false", "no", "off"}


def output_dir():
    return Path(os.getenv("MANIFOLD_ALIGN_OUTPUT_DIR", "output"))


def results_db_path():
    value = os.getenv("MANIFOLD_ALIGN_RESULTS_DB")
    return Path(value) if value else None


def normalize_key(key):
    """EMBED_DIM, embed-dim and embed_dim all map to the argparse dest embed_dim."""
    return key.strip().lower().replace("-", "_")


def parse_bool(value):
    lowered = str(value).strip().lower()
    if lowered in TRUE_VALUES:
        return True
    if lowered in FALSE_VALUES:
        return False
    raise ValueError(f"Not a boolean value: {value!r}")


def load_config_file(path):
    """
    Read a dotenv-style run configuration.
    :param path: file of KEY=value lines
    :return: dict keyed by argparse dest names
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Config file not found: {path}")
    return {
        normalize_key(key): value
        for key, value in dotenv_values(path).items()
        if value is not None
    }


def config_fingerprint(config):
    """Short stable hash of a JSON-serializable configuration."""
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
