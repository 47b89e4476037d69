from .logger import setup_logger
from .config import config_fingerprint, load_config_file, normalize_key, output_dir, parse_bool, results_db_path

__all__ = [
    "setup_logger",
    "config_fingerprint",
    "load_config_file",
    "normalize_key",
    "output_dir",
    "parse_bool",
    "results_db_path",
]
