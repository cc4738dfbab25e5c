"""Delimited-text ingestion and serialization of time series.

The file layout is explicit in :class:`IngestSchema` rather than guessed:
which columns hold timestamp and speed, how timestamps are written, the
delimiter, and the station's UTC offset.  ``dt`` stays caller-supplied
config and the loader validates the file against it instead of inferring,
since a silently misdetected interval corrupts all later slot arithmetic.

Loaded series are trimmed to start at the first local midnight so that
sample index 0 is always slot 0 of a day.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .errors import (
    AllDaysDropped,
    EmptyInput,
    InconsistentSamplingInterval,
    NegativeSpeed,
    NonMonotonicTimestamps,
    ParseError,
)
from .series import GAP_LINEAR, TimeSeries, fill_gaps

__all__ = ["FORMAT_EPOCH", "FORMAT_ISO", "IngestSchema", "load_csv", "save_csv"]

FORMAT_EPOCH = "epoch-seconds"
FORMAT_ISO = "ISO-8601"

SECONDS_PER_DAY = 86400


@dataclass(frozen=True)
class IngestSchema:
    """Layout of a delimited wind-speed file.

    Columns may be header names or zero-based indices; naming either
    column means the first row is a header.  ``timestamp_format`` is
    ``epoch-seconds``, ``ISO-8601``, or a strptime pattern.  Timestamps
    without an explicit zone are read as local time ``utc_offset`` minutes
    ahead of UTC.
    """

    timestamp_column: str | int = "timestamp"
    value_column: str | int = "value"
    timestamp_format: str = FORMAT_EPOCH
    delimiter: str = ","
    utc_offset: int = 0

    def __post_init__(self):
        if self.timestamp_column == self.value_column:
            raise ValueError("timestamp and value columns must differ")
        if len(self.delimiter) != 1 or not self.delimiter.isprintable():
            raise ValueError("delimiter must be one printable character")


def _parse_timestamp(text: str, schema: IngestSchema) -> float:
    if schema.timestamp_format == FORMAT_EPOCH:
        return float(text)
    if schema.timestamp_format == FORMAT_ISO:
        stamp = datetime.fromisoformat(text.replace("Z", "+00:00"))
    else:
        stamp = datetime.strptime(text, schema.timestamp_format)
    if stamp.tzinfo is not None:
        return stamp.timestamp()
    local = stamp.replace(tzinfo=timezone.utc).timestamp()
    return local - schema.utc_offset * 60


def _resolve_columns(header, schema: IngestSchema, path: str):
    """Map the schema's column specs to indices; None header means no names."""
    indices = []
    for spec in (schema.timestamp_column, schema.value_column):
        if isinstance(spec, int):
            indices.append(spec)
        else:
            if header is None or spec not in header:
                raise ParseError(1, spec, f"column {spec!r} not in header of {path}")
            indices.append(header.index(spec))
    return indices


def load_csv(path, schema: IngestSchema = IngestSchema(), *, dt: float = 600.0,
             policy: str = GAP_LINEAR, max_run: int = 6) -> TimeSeries:
    """Load a delimited wind-speed file onto a uniform grid.

    Rows are parsed per the schema, timestamps must be strictly increasing
    with every delta a multiple of ``dt`` and ``dt`` itself the most common
    delta, speeds must be non-negative, the series is trimmed to the first
    local midnight, and jumps become missing samples handled by the gap
    ``policy`` (see ``fill_gaps``).

    Raises
    ------
    FileNotFoundError
        If the path does not exist.
    ParseError
        For malformed rows or missing columns.
    NegativeSpeed
        For a below-zero speed value.
    NonMonotonicTimestamps
        If timestamps do not strictly increase.
    InconsistentSamplingInterval
        If the file's sampling grid disagrees with ``dt``.
    EmptyInput
        If the file holds no data rows.
    AllDaysDropped
        If no local midnight exists or gap handling drops every day.
    """
    needs_header = (isinstance(schema.timestamp_column, str)
                    or isinstance(schema.value_column, str))
    records = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle, delimiter=schema.delimiter)
        header = next(reader, None) if needs_header else None
        t_col, v_col = _resolve_columns(header, schema, str(path))
        for row_no, row in enumerate(reader, 2 if needs_header else 1):
            if not row:
                continue
            if max(t_col, v_col) >= len(row):
                raise ParseError(row_no, max(t_col, v_col),
                                 f"row has only {len(row)} fields")
            try:
                stamp = _parse_timestamp(row[t_col], schema)
            except ValueError as exc:
                raise ParseError(row_no, schema.timestamp_column, str(exc)) from exc
            try:
                value = float(row[v_col])
            except ValueError as exc:
                raise ParseError(row_no, schema.value_column, str(exc)) from exc
            if not np.isfinite(value) or not np.isfinite(stamp):
                raise ParseError(row_no, schema.value_column, "non-finite value")
            if value < 0:
                raise NegativeSpeed(row_no, value)
            records.append((stamp, value))

    if not records:
        raise EmptyInput(f"no data rows in {path}")
    stamps = np.array([r[0] for r in records])
    deltas = np.diff(stamps)
    if np.any(deltas <= 0):
        bad = int(np.flatnonzero(deltas <= 0)[0])
        raise NonMonotonicTimestamps(
            f"timestamp does not increase at data row {bad + 2}"
        )
    if len(deltas):
        mode, _ = Counter(deltas.tolist()).most_common(1)[0]
        if mode != dt:
            raise InconsistentSamplingInterval(
                f"most common timestamp delta is {mode}, configured dt is {dt}"
            )

    # slot 0 must be a local midnight
    local = stamps + schema.utc_offset * 60
    aligned = np.flatnonzero(local % SECONDS_PER_DAY == 0)
    if len(aligned) == 0:
        raise AllDaysDropped(f"no local midnight sample in {path}")
    records = records[int(aligned[0]):]
    return fill_gaps(records, dt, policy, max_run=max_run)


def save_csv(x: TimeSeries, path, schema: IngestSchema = IngestSchema()) -> None:
    """Write a series as delimited text readable by ``load_csv``.

    Timestamps are epoch seconds regardless of how the series was first
    parsed (integers when whole); values carry full precision so a reload
    reproduces the series bit for bit.  Quality flags are not serialized:
    a reloaded series reports every sample as observed.  The schema must
    name both columns (header written) or index them as 0 and 1 (no
    header).
    """
    specs = (schema.timestamp_column, schema.value_column)
    if all(isinstance(spec, str) for spec in specs):
        header = specs
        t_first = True
    elif sorted(specs) == [0, 1]:  # type: ignore[type-var]
        header = None
        t_first = schema.timestamp_column == 0
    else:
        raise ValueError("schema must name both columns or index them 0 and 1")
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, delimiter=schema.delimiter, lineterminator="\n")
        if header is not None:
            writer.writerow(header)
        for stamp, value in zip(x.timestamps(), x.values):
            whole = int(stamp)
            fields = [whole if whole == stamp else repr(float(stamp)),
                      repr(float(value))]
            writer.writerow(fields if t_first else fields[::-1])
