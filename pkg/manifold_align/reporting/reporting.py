import csv
import json
import logging
from pathlib import Path

from metrics import auc_cumulative_counts
from utils import output_dir

ABLATION_FIELDS = ["variant", "mrr", "knn_accuracy", "distance_correlation"]


def format_value(value):
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return "none"
    return str(value)


class ReportGenerator:
    """Writes evaluation reports and their CSV artifacts."""

    def __init__(self, base_path=None):
        self.base_path = Path(base_path) if base_path else output_dir() / "reports"
        self.base_path.mkdir(parents=True, exist_ok=True)
        logging.info(f"Report generator initialized: {self.base_path}")

    def _path(self, name, suffix):
        return self.base_path / f"{name}{suffix}"

    def generate_report(self, report, name="eval"):
        """Flat `key = value` text report."""
        report_path = self._path(name, ".report.txt")
        with open(report_path, "w", encoding="utf-8", newline="\n") as handle:
            for key, value in report.summary().items():
                handle.write(f"{key} = {format_value(value)}\n")
        logging.info(f"Report generated: {report_path}")
        return report_path

    def generate_auc_csv(self, report, name="eval"):
        auc_path = self._path(name, ".auc.csv")
        with open(auc_path, "w", newline="", encoding="utf-8") as csvfile:
            writer = csv.writer(csvfile, lineterminator="\n")
            writer.writerow(["pair_id", "auc"])
            for pair_id, value in report.per_task_auc:
                writer.writerow([pair_id, repr(value)])
        return auc_path

    def generate_auc_cumulative_csv(self, report, name="eval"):
        cumulative_path = self._path(name, ".auc_cumulative.csv")
        grid, counts = auc_cumulative_counts([value for _, value in report.per_task_auc])
        with open(cumulative_path, "w", newline="", encoding="utf-8") as csvfile:
            writer = csv.writer(csvfile, lineterminator="\n")
            writer.writerow(["auc", "tasks_at_or_below"])
            for g, count in zip(grid, counts):
                writer.writerow([repr(float(g)), int(count)])
        return cumulative_path

    def generate_dc_csv(self, report, name="eval"):
        """Scatter samples for plotting vision-side against language-side distances."""
        dc_path = self._path(name, ".dc_scatter.csv")
        with open(dc_path, "w", newline="", encoding="utf-8") as csvfile:
            writer = csv.writer(csvfile, lineterminator="\n")
            writer.writerow(["language_distance", "vision_distance"])
            for language, vision in zip(report.dc_language, report.dc_vision):
                writer.writerow([repr(float(language)), repr(float(vision))])
        return dc_path

    def generate_reports(self, report, name="eval"):
        """Report text, per-task AUC CSV, cumulative AUC CSV and DC scatter CSV."""
        return (
            self.generate_report(report, name),
            self.generate_auc_csv(report, name),
            self.generate_auc_cumulative_csv(report, name),
            self.generate_dc_csv(report, name),
        )

    def generate_table(self, rows, fieldnames, name):
        table_path = self._path(name, ".csv")
        with open(table_path, "w", newline="", encoding="utf-8") as csvfile:
            writer = csv.DictWriter(csvfile, fieldnames=fieldnames, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: format_value(row[key]) for key in fieldnames})
        logging.info(f"Table generated: {table_path}")
        return table_path

    def generate_ablation_table(self, rows, name="ablation"):
        return self.generate_table(rows, ABLATION_FIELDS, name)


def write_history(history, path):
    """One JSON object per epoch: epoch, train_loss, val_loss."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for record in history:
            handle.write(
                json.dumps({"epoch": record.epoch, "train_loss": record.train_loss, "val_loss": record.val_loss}) + "\n"
            )
    logging.info(f"Training history saved: {path}")
    return path
