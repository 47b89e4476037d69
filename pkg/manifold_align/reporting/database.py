import logging
import sqlite3
from pathlib import Path

from utils import output_dir

METRIC_COLUMNS = ["mrr", "knn_accuracy", "distance_correlation", "mean_auc", "micro_f1", "macro_f1"]


class ResultsDatabase:
    """SQLite registry of evaluation results across methods and runs."""

    def __init__(self, db_path=None):
        self.db_path = Path(db_path) if db_path else output_dir() / "results.db"
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.conn = None
        self._init_database()
        logging.info(f"Results database initialized: {self.db_path}")

    def _init_database(self):
        self.conn = sqlite3.connect(str(self.db_path))
        self.conn.row_factory = sqlite3.Row

        cursor = self.conn.cursor()
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS results (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                method TEXT NOT NULL,
                variant TEXT NOT NULL,
                fingerprint TEXT,
                dataset TEXT,
                split TEXT,
                mrr REAL,
                knn_accuracy REAL,
                distance_correlation REAL,
                mean_auc REAL,
                micro_f1 REAL,
                macro_f1 REAL,
                created_at TEXT DEFAULT CURRENT_TIMESTAMP
            )
        """)
        cursor.execute("CREATE INDEX IF NOT EXISTS idx_method ON results(method, variant)")
        self.conn.commit()

    def insert_result(self, method, variant, metrics, fingerprint="", dataset="", split=""):
        """Store one evaluated variant; metrics missing from the dict are stored as NULL."""
        cursor = self.conn.cursor()
        cursor.execute(
            """
            INSERT INTO results (
                method, variant, fingerprint, dataset, split,
                mrr, knn_accuracy, distance_correlation, mean_auc, micro_f1, macro_f1
            ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
        """,
            (method, variant, fingerprint, dataset, split, *[metrics.get(column) for column in METRIC_COLUMNS]),
        )
        result_id = cursor.lastrowid
        self.conn.commit()
        return result_id

    def get_results_by_method(self, method):
        cursor = self.conn.cursor()
        cursor.execute("SELECT * FROM results WHERE method = ? ORDER BY id", (method,))
        return [dict(row) for row in cursor.fetchall()]

    def get_statistics(self):
        """Mean of every metric per (method, variant), best MRR first."""
        cursor = self.conn.cursor()
        averages = ", ".join(f"AVG({column}) AS {column}" for column in METRIC_COLUMNS)
        cursor.execute(f"""
            SELECT method, variant, COUNT(*) AS runs, {averages}
            FROM results
            GROUP BY method, variant
            ORDER BY mrr DESC, method, variant
        """)
        return [dict(row) for row in cursor.fetchall()]

    def get_total_count(self):
        cursor = self.conn.cursor()
        cursor.execute("SELECT COUNT(*) AS total FROM results")
        return cursor.fetchone()["total"]

    def close(self):
        if self.conn:
            self.conn.close()
            self.conn = None
            logging.info("Results database closed")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()
