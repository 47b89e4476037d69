class ManifoldAlignError(Exception):
    """Base error for the alignment toolkit"""

    pass


class DatasetError(ManifoldAlignError):
    """Malformed or inconsistent paired data"""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DimensionError(ManifoldAlignError, ValueError):
    """Vector or matrix shapes do not agree"""

    pass


class InvalidVectorError(ManifoldAlignError, ValueError):
    """Zero vector under cosine distance, or non-finite values"""

    pass


class ConfigError(ManifoldAlignError, ValueError):
    """Invalid configuration value"""

    pass


class NumericalError(ManifoldAlignError):
    """Divergence or a numerically degenerate computation"""

    pass
