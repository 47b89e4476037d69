from .reporting import ABLATION_FIELDS, ReportGenerator, format_value, write_history
from .database import METRIC_COLUMNS, ResultsDatabase

__all__ = ["ABLATION_FIELDS", "ReportGenerator", "format_value", "write_history", "METRIC_COLUMNS", "ResultsDatabase"]
