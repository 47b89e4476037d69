import logging
import os


def setup_logger(level=None):
    level = level or os.getenv("MANIFOLD_ALIGN_LOG_LEVEL", "INFO")
    logging.basicConfig(
        level=level.upper(), format="%(asctime)s | %(levelname)s | %(message)s"
    )
