import json
import logging
import math
from pathlib import Path

from .errors import DatasetError
from .records import Dataset, PairRecord


class RecordParser:
    """Turns one JSON Lines entry into a PairRecord."""

    def parse_line(self, line, line_number: int) -> PairRecord:
        if isinstance(line, bytes):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError as e:
                raise DatasetError(f"malformed record: invalid UTF-8 at byte {e.start}", line_number) from e
        try:
            raw = json.loads(line)
        except ValueError as e:
            # JSONDecodeError, or an integer literal past the interpreter's digit limit
            raise DatasetError(f"malformed record: {getattr(e, 'msg', e)}", line_number) from e

        if not isinstance(raw, dict):
            raise DatasetError("record must be a JSON object", line_number)

        pair_id = raw.get("pair_id")
        if not isinstance(pair_id, str) or not pair_id:
            raise DatasetError("missing or non-string pair_id", line_number)

        class_label = raw.get("class")
        if class_label is not None and not isinstance(class_label, str):
            raise DatasetError("class must be a string when present", line_number)

        vision = self._parse_vector(raw.get("vision"), "vision", line_number)
        language = self._parse_vector(raw.get("language"), "language", line_number)
        return PairRecord(pair_id, vision, language, class_label)

    def _parse_vector(self, value, name, line_number):
        if not isinstance(value, list) or not value:
            raise DatasetError(f"{name} must be a non-empty array of numbers", line_number)
        vector = []
        for item in value:
            # bool is an int subclass; reject it explicitly
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise DatasetError(f"{name} contains a non-numeric entry", line_number)
            try:
                item = float(item)
            except OverflowError as e:
                raise DatasetError(f"{name} contains a value not representable as a float", line_number) from e
            if not math.isfinite(item):
                raise DatasetError(f"{name} contains a non-finite value", line_number)
            vector.append(item)
        return vector


def load_dataset(path) -> Dataset:
    """
    Read a JSON Lines dataset file.
    Record order equals file order; blank lines are ignored.
    """
    path = Path(path)
    parser = RecordParser()
    records = []
    seen = set()
    dims = None

    with open(path, "rb") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            # json accepts NaN/Infinity literals, which the parser then rejects
            record = parser.parse_line(line, line_number)

            if record.pair_id in seen:
                raise DatasetError(f"duplicate pair_id {record.pair_id!r}", line_number)
            seen.add(record.pair_id)

            record_dims = (record.vision.size, record.language.size)
            if dims is None:
                dims = record_dims
            elif record_dims != dims:
                raise DatasetError(
                    f"dimension mismatch: got (vision={record_dims[0]}, language={record_dims[1]}), "
                    f"expected (vision={dims[0]}, language={dims[1]})",
                    line_number,
                )
            records.append(record)

    if not records:
        raise DatasetError(f"dataset is empty: {path}")

    logging.info(f"Loaded {len(records)} pairs from {path} (vision={dims[0]}, language={dims[1]})")
    return Dataset(tuple(records), dims[0], dims[1])


def record_to_json(record: PairRecord) -> str:
    payload = {"pair_id": record.pair_id}
    if record.class_label is not None:
        payload["class"] = record.class_label
    payload["vision"] = record.vision.tolist()
    payload["language"] = record.language.tolist()
    return json.dumps(payload, ensure_ascii=False)


def save_dataset(ds: Dataset, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for record in ds.records:
            handle.write(record_to_json(record) + "\n")
    logging.info(f"Saved {len(ds)} pairs to {path}")
    return path
