import json

import numpy as np
import pytest

from core import Dataset, DatasetError, PairRecord, RecordParser, load_dataset, save_dataset

parser = RecordParser()


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def dataset_file(tmp_path):
    return write_lines(
        tmp_path / "pairs.jsonl",
        [
            '{"pair_id": "a", "class": "dog", "vision": [1, 0], "language": [1, 0, 0]}',
            "",
            '{"pair_id": "b", "class": "cat", "vision": [0.5, 2.5], "language": [0, 1, 0]}',
        ],
    )


def test_load_dataset_ok(dataset_file):
    ds = load_dataset(dataset_file)

    assert len(ds) == 2
    assert (ds.dim_vision, ds.dim_language) == (2, 3)
    assert ds.pair_ids == ["a", "b"]
    assert ds.labels == ["dog", "cat"]
    assert ds.vision.dtype == np.float64
    np.testing.assert_array_equal(ds.vision[1], [0.5, 2.5])


def test_dimension_mismatch_names_line(tmp_path):
    path = write_lines(
        tmp_path / "bad.jsonl",
        [
            '{"pair_id": "a", "vision": [1, 0], "language": [1, 0, 0]}',
            '{"pair_id": "b", "vision": [1, 0, 3], "language": [1, 0, 0]}',
        ],
    )

    with pytest.raises(DatasetError) as excinfo:
        load_dataset(path)
    assert excinfo.value.line_number == 2
    assert "line 2" in str(excinfo.value)


@pytest.mark.parametrize(
    "line, fragment",
    [
        ("not json", "malformed"),
        ("[1, 2]", "JSON object"),
        ('{"vision": [1], "language": [1]}', "pair_id"),
        ('{"pair_id": "a", "class": 3, "vision": [1], "language": [1]}', "class"),
        ('{"pair_id": "a", "vision": [], "language": [1]}', "vision"),
        ('{"pair_id": "a", "vision": [1, "x"], "language": [1]}', "non-numeric"),
        ('{"pair_id": "a", "vision": [true], "language": [1]}', "non-numeric"),
        ('{"pair_id": "a", "vision": [NaN], "language": [1]}', "non-finite"),
        ('{"pair_id": "a", "vision": [1], "language": [Infinity]}', "non-finite"),
    ],
)
def test_parse_line_rejects(line, fragment):
    with pytest.raises(DatasetError) as excinfo:
        parser.parse_line(line, 7)
    assert fragment in str(excinfo.value)
    assert excinfo.value.line_number == 7


def test_duplicate_pair_id(tmp_path):
    path = write_lines(
        tmp_path / "dup.jsonl",
        [
            '{"pair_id": "a", "vision": [1], "language": [1]}',
            '{"pair_id": "a", "vision": [2], "language": [2]}',
        ],
    )

    with pytest.raises(DatasetError, match="duplicate"):
        load_dataset(path)


def test_invalid_utf8_names_line(tmp_path):
    path = tmp_path / "latin1.jsonl"
    path.write_bytes(
        b'{"pair_id": "a", "vision": [1], "language": [1]}\n'
        b'{"pair_id": "\xff", "vision": [2], "language": [2]}\n'
    )

    with pytest.raises(DatasetError) as excinfo:
        load_dataset(path)
    assert excinfo.value.line_number == 2
    assert "UTF-8" in str(excinfo.value)


def test_huge_integer_names_line(tmp_path):
    path = write_lines(
        tmp_path / "huge.jsonl",
        [
            '{"pair_id": "a", "vision": [1], "language": [1]}',
            '{"pair_id": "b", "vision": [1' + "0" * 400 + '], "language": [2]}',
        ],
    )

    with pytest.raises(DatasetError) as excinfo:
        load_dataset(path)
    assert excinfo.value.line_number == 2
    assert "not representable" in str(excinfo.value)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("\n\n", encoding="utf-8")

    with pytest.raises(DatasetError, match="empty"):
        load_dataset(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_dataset(tmp_path / "nope.jsonl")


def test_save_then_load_keeps_values(tmp_path):
    records = [
        PairRecord("p1", [0.1, 1 / 3], [2e-300], "x"),
        PairRecord("p2", [-7.25, 1e10], [0.3], None),
    ]
    ds = Dataset.from_records(records)

    loaded = load_dataset(save_dataset(ds, tmp_path / "out" / "d.jsonl"))

    np.testing.assert_array_equal(loaded.vision, ds.vision)
    np.testing.assert_array_equal(loaded.language, ds.language)
    assert loaded.labels == ["x", None]
    assert "class" not in json.loads((tmp_path / "out" / "d.jsonl").read_text().splitlines()[1])


def test_dataset_is_read_only(dataset_file):
    ds = load_dataset(dataset_file)

    with pytest.raises(ValueError):
        ds.vision[0, 0] = 5.0
    with pytest.raises(ValueError):
        ds.records[0].language[0] = 5.0


def test_dataset_properties():
    ds = Dataset.from_records(
        [PairRecord("a", [1.0], [1.0], "y"), PairRecord("b", [2.0], [2.0], "x"), PairRecord("c", [3.0], [3.0], "y")]
    )

    assert ds.is_labeled
    assert ds.classes == ["x", "y"]
    assert ds.subset([2, 0]).pair_ids == ["c", "a"]


def test_partially_labeled_is_not_labeled():
    ds = Dataset.from_records([PairRecord("a", [1.0], [1.0], "y"), PairRecord("b", [2.0], [2.0])])

    assert not ds.is_labeled


def test_from_records_empty():
    with pytest.raises(DatasetError):
        Dataset.from_records([])
