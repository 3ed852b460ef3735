"""Tests for CSV and JSON artifacts."""

import json

import numpy as np

from src.experiments.artifacts import (
    check_writable,
    format_cell,
    null_non_finite,
    parse_cell,
    read_csv,
    write_csv,
    write_json,
)


class TestCells:
    def test_format(self):
        assert format_cell(None) == ""
        assert format_cell(float("nan")) == ""
        assert format_cell(0.1) == "0.1"
        assert format_cell(np.float64(0.25)) == "0.25"
        assert format_cell(np.int64(7)) == "7"
        assert format_cell(True) == "true"
        assert format_cell("mode0") == "mode0"

    def test_parse(self):
        assert parse_cell("") is None
        assert parse_cell("1e-3") == 1e-3


class TestFiles:
    """Tests for file writers."""

    def test_csv_bytes(self, tmp_path):
        path = tmp_path / "out.csv"
        write_csv(path, ("a", "b"), [(1, 0.5), (None, float("nan"))])
        assert path.read_bytes() == b"a,b\n1,0.5\n,\n"
        assert read_csv(path) == [{"a": "1", "b": "0.5"}, {"a": "", "b": ""}]

    def test_json(self, tmp_path):
        path = tmp_path / "out.json"
        write_json(path, {"b": np.array([1.0, 2.0]), "a": float("inf")})
        text = path.read_text()
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": None, "b": [1.0, 2.0]}

    def test_check_writable(self, tmp_path):
        existing = tmp_path / "x.csv"
        existing.write_text("")
        paths = [existing, tmp_path / "y.csv"]
        assert check_writable(paths, force=False) == [existing]
        assert check_writable(paths, force=True) == []


class TestNullNonFinite:
    def test_nested(self):
        data = {"a": float("nan"), "b": [1.0, float("inf"), (np.float64("-inf"), 2)]}
        assert null_non_finite(data) == {"a": None, "b": [1.0, None, [None, 2]]}

    def test_leaves_other_values(self):
        assert null_non_finite("nan") == "nan"
        assert null_non_finite(3) == 3
