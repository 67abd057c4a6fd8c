"""Tests for result records and their persistence."""

import io
import math
from pathlib import Path

import pytest

from simfiber.core.exceptions import ResultsIOError
from simfiber.core.types import OutputFormat
from simfiber.harness.records import (
    CSV_HEADER,
    ResultRecord,
    canonical_order,
    emit_results,
    read_results,
    write_results,
)


def _records() -> list[ResultRecord]:
    return [
        ResultRecord(
            "sweep_atoms",
            1,
            None,
            0,
            "capacity_bps_hz",
            12.5,
            params={"architecture": "two_layer", "m_atoms": 4},
        ),
        ResultRecord(
            "sweep_atoms",
            0,
            1,
            99,
            "nmse",
            1.0 / 3.0,
            iteration=2,
            params={"architecture": "two_layer"},
        ),
        ResultRecord(
            "sweep_atoms",
            0,
            0,
            42,
            "nmse",
            0.1,
            duration_s=0.25,
            params={"architecture": "multi_layer"},
        ),
        ResultRecord(
            "sweep_atoms",
            0,
            0,
            42,
            "nmse",
            0.2,
            params={"architecture": "two_layer"},
        ),
    ]


class TestCanonicalOrder:
    """Tests for the record sort key."""

    def test_point_then_trial_then_architecture(self) -> None:
        ordered = canonical_order(_records())

        assert [(r.point, r.trial, r.architecture) for r in ordered] == [
            (0, 0, "multi_layer"),
            (0, 0, "two_layer"),
            (0, 1, "two_layer"),
            (1, None, "two_layer"),
        ]

    def test_aggregates_follow_trials(self) -> None:
        aggregate = ResultRecord("heatmap", 0, None, 0, "nmse", 0.0)
        trial = ResultRecord("heatmap", 0, 5, 0, "nmse", 0.0)

        assert canonical_order([aggregate, trial]) == [trial, aggregate]


class TestWriteResults:
    """Tests for writing to open streams."""

    def test_empty_csv_is_header_only(self) -> None:
        stream = io.StringIO()

        write_results([], stream)

        assert stream.getvalue() == ",".join(CSV_HEADER) + "\n"

    def test_csv_cells(self) -> None:
        stream = io.StringIO()

        write_results(_records()[1:2], stream)

        lines = stream.getvalue().splitlines()
        assert lines[1].startswith("sweep_atoms,0,1,99,nmse,0.3333333333333333,2,,")
        assert lines[1].endswith('"{""architecture"":""two_layer""}"')

    def test_jsonl_one_object_per_line(self) -> None:
        stream = io.StringIO()

        write_results(_records(), stream, OutputFormat.JSON_LINES)

        lines = stream.getvalue().splitlines()
        assert len(lines) == 4
        assert all(line.startswith('{"duration_s"') for line in lines)

    def test_order_of_input_does_not_matter(self) -> None:
        forward, backward = io.StringIO(), io.StringIO()

        write_results(_records(), forward)
        write_results(list(reversed(_records())), backward)

        assert forward.getvalue() == backward.getvalue()


class TestEmitAndRead:
    """Tests for file persistence."""

    @pytest.mark.parametrize("name", ["out.csv", "out.jsonl"])
    def test_values_survive_exactly(self, tmp_path: Path, name: str) -> None:
        path = emit_results(_records(), tmp_path / name)

        assert read_results(path) == canonical_order(_records())

    def test_identical_inputs_identical_bytes(self, tmp_path: Path) -> None:
        first = emit_results(_records(), tmp_path / "a.csv")
        second = emit_results(_records(), tmp_path / "b.csv")

        assert first.read_bytes() == second.read_bytes()

    def test_suffix_selects_format(self, tmp_path: Path) -> None:
        path = emit_results(_records(), tmp_path / "out.ndjson")

        assert path.read_text().startswith("{")

    def test_explicit_format_wins(self, tmp_path: Path) -> None:
        path = emit_results(_records(), tmp_path / "out.txt", OutputFormat.JSON_LINES)

        assert read_results(path, "jsonl") == canonical_order(_records())

    def test_creates_parent_directories(self, tmp_path: Path) -> None:
        path = emit_results([], tmp_path / "nested" / "dir" / "out.csv")

        assert path.exists()
        assert read_results(path) == []

    def test_nan_values_round_trip(self, tmp_path: Path) -> None:
        record = ResultRecord("convergence", 0, 0, 1, "nmse", math.nan)

        path = emit_results([record], tmp_path / "nan.csv")

        assert math.isnan(read_results(path)[0].value)

    def test_bad_header_raises(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")

        with pytest.raises(ResultsIOError):
            read_results(path)

    def test_malformed_row_raises(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.csv"
        path.write_text(",".join(CSV_HEADER) + "\nheatmap,x,,0,nmse,1.0,,,{}\n")

        with pytest.raises(ResultsIOError):
            read_results(path)

    def test_missing_file_raises(self, tmp_path: Path) -> None:
        with pytest.raises(ResultsIOError):
            read_results(tmp_path / "missing.csv")

    def test_unwritable_target_raises(self, tmp_path: Path) -> None:
        blocker = tmp_path / "file"
        blocker.write_text("")

        with pytest.raises(ResultsIOError):
            emit_results([], blocker / "out.csv")
