"""Result records and their CSV / JSON-lines persistence.

CSV header (fixed):

    kind,point,trial,seed,metric,value,iteration,duration_s,params

Empty ``trial`` marks an aggregate over trials, empty ``iteration`` a
per-run value and empty ``duration_s`` an untimed record. ``params`` is the
resolved parameter set of the point as compact JSON with sorted keys. Floats
are written with repr so that reading them back is exact.
"""

import csv
import json
import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any

from ..core.exceptions import ResultsIOError
from ..core.types import OutputFormat

CSV_HEADER = (
    "kind",
    "point",
    "trial",
    "seed",
    "metric",
    "value",
    "iteration",
    "duration_s",
    "params",
)


@dataclass(frozen=True)
class ResultRecord:
    """One self-describing outcome row."""

    kind: str
    point: int
    trial: int | None
    seed: int
    metric: str
    value: float
    iteration: int | None = None
    duration_s: float | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def architecture(self) -> str:
        return str(self.params.get("architecture", ""))

    def sort_key(self) -> tuple[Any, ...]:
        """(point, trial, metric, architecture, iteration); aggregates after trials."""
        return (
            self.point,
            self.trial is None,
            self.trial if self.trial is not None else 0,
            self.metric,
            self.architecture,
            self.iteration is None,
            self.iteration if self.iteration is not None else 0,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "point": self.point,
            "trial": self.trial,
            "seed": self.seed,
            "metric": self.metric,
            "value": self.value,
            "iteration": self.iteration,
            "duration_s": self.duration_s,
            "params": self.params,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ResultRecord":
        return cls(
            kind=str(data["kind"]),
            point=int(data["point"]),
            trial=None if data.get("trial") is None else int(data["trial"]),
            seed=int(data["seed"]),
            metric=str(data["metric"]),
            value=float(data["value"]),
            iteration=None if data.get("iteration") is None else int(data["iteration"]),
            duration_s=None
            if data.get("duration_s") is None
            else float(data["duration_s"]),
            params=dict(data.get("params") or {}),
        )


def canonical_order(records: Iterable[ResultRecord]) -> list[ResultRecord]:
    return sorted(records, key=ResultRecord.sort_key)


def _format_float(value: float) -> str:
    if math.isnan(value):
        return "nan"
    return repr(float(value))


def _optional(value: int | float | None) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return _format_float(value)
    return str(value)


def _params_json(params: dict[str, Any]) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def _csv_row(record: ResultRecord) -> list[str]:
    return [
        record.kind,
        str(record.point),
        _optional(record.trial),
        str(record.seed),
        record.metric,
        _format_float(record.value),
        _optional(record.iteration),
        _optional(record.duration_s),
        _params_json(record.params),
    ]


def _resolve_format(path: Path, fmt: OutputFormat | str | None) -> OutputFormat:
    if fmt is not None:
        return OutputFormat(fmt)
    if path.suffix in (".jsonl", ".ndjson"):
        return OutputFormat.JSON_LINES
    return OutputFormat.CSV


def write_results(
    records: Iterable[ResultRecord],
    stream: IO[str],
    fmt: OutputFormat | str = OutputFormat.CSV,
) -> None:
    """Write records in canonical order to an open text stream."""
    ordered = canonical_order(records)
    if OutputFormat(fmt) == OutputFormat.CSV:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(_csv_row(r) for r in ordered)
        return
    for record in ordered:
        stream.write(json.dumps(record.to_dict(), sort_keys=True))
        stream.write("\n")


def emit_results(
    records: Iterable[ResultRecord],
    path: str | Path,
    fmt: OutputFormat | str | None = None,
) -> Path:
    """Write records in canonical order; identical inputs give identical bytes.

    The format is taken from ``fmt`` or else from the file suffix (.jsonl means
    JSON lines, anything else CSV).

    Raises:
        ResultsIOError: If the file cannot be written.
    """
    target = Path(path)
    output_format = _resolve_format(target, fmt)
    try:
        if target.parent != Path():
            target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", newline="", encoding="utf-8") as fh:
            write_results(records, fh, output_format)
    except OSError as e:
        raise ResultsIOError(str(target), e.strerror or str(e)) from e
    return target


def _parse_csv_row(row: dict[str, str]) -> ResultRecord:
    return ResultRecord(
        kind=row["kind"],
        point=int(row["point"]),
        trial=int(row["trial"]) if row["trial"] else None,
        seed=int(row["seed"]),
        metric=row["metric"],
        value=float(row["value"]),
        iteration=int(row["iteration"]) if row["iteration"] else None,
        duration_s=float(row["duration_s"]) if row["duration_s"] else None,
        params=json.loads(row["params"]),
    )


def read_results(
    path: str | Path, fmt: OutputFormat | str | None = None
) -> list[ResultRecord]:
    """Parse a file written by emit_results.

    Raises:
        ResultsIOError: If the file is unreadable or malformed.
    """
    source = Path(path)
    input_format = _resolve_format(source, fmt)
    try:
        with open(source, newline="", encoding="utf-8") as fh:
            if input_format == OutputFormat.CSV:
                reader = csv.DictReader(fh)
                if tuple(reader.fieldnames or ()) != CSV_HEADER:
                    raise ResultsIOError(str(source), "unexpected CSV header")
                return [_parse_csv_row(row) for row in reader]
            return [
                ResultRecord.from_dict(json.loads(line)) for line in fh if line.strip()
            ]
    except OSError as e:
        raise ResultsIOError(str(source), e.strerror or str(e)) from e
    except (KeyError, ValueError, TypeError) as e:
        raise ResultsIOError(str(source), f"malformed record: {e}") from e
