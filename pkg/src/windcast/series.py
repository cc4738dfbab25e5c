"""Uniform time-series container, gap handling, and days-by-slots partitioning.

A day-ahead forecast at 10-minute resolution works on a series rearranged
into an N x P matrix whose rows are consecutive days and whose columns are
time-of-day slots (P = 144 for 10-minute data).  This module owns that
rearrangement plus the gap policy that produces a clean uniform grid first.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AllDaysDropped,
    EmptyInput,
    InconsistentSamplingInterval,
    IndexOutOfRange,
    InvalidPeriod,
    NonMonotonicTimestamps,
    SeriesTooShort,
)

logger = logging.getLogger(__name__)

# per-sample quality flags
OBSERVED = 0
INTERPOLATED = 1

#: gap policies accepted by :func:`fill_gaps`
GAP_LINEAR = "linear-interpolate"
GAP_DROP_DAY = "drop-day"


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled scalar series.

    Parameters
    ----------
    values : ndarray
        Sample values (wind speed in m/s for ingested data).  Must be finite.
    dt : float
        Sampling interval in seconds, > 0.
    origin : float
        UTC epoch seconds of the first sample.
    quality : ndarray, optional
        Per-sample flag, ``OBSERVED`` or ``INTERPOLATED``.  Defaults to all
        observed.
    """

    values: np.ndarray
    dt: float = 600.0
    origin: float = 0.0
    quality: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if values.size and not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if self.quality is None:
            object.__setattr__(
                self, "quality", np.zeros(len(values), dtype=np.uint8)
            )
        else:
            quality = np.asarray(self.quality, dtype=np.uint8)
            if len(quality) != len(values):
                raise ValueError("quality must have the same length as values")
            object.__setattr__(self, "quality", quality)

    def __len__(self) -> int:
        return len(self.values)

    def timestamps(self) -> np.ndarray:
        """UTC epoch seconds of every sample."""
        return self.origin + self.dt * np.arange(len(self.values))


@dataclass(frozen=True)
class PartitionMatrix:
    """N x P rearrangement of a series: row i holds day i's measurements.

    Element (i, j) equals source sample ``x[i * P + j]``, so column j is the
    across-days sub-series of time-of-day slot j.
    """

    data: np.ndarray
    dt: float
    origin: float

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2:
            raise ValueError("data must be two-dimensional")
        if data.shape[0] < 1 or data.shape[1] < 2:
            raise ValueError(f"need N >= 1 and P >= 2, got {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ValueError("data must be finite")
        object.__setattr__(self, "data", data)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


def fill_gaps(raw, dt: float, policy: str = GAP_LINEAR, *,
              max_run: int = 6, samples_per_day: int | None = None) -> TimeSeries:
    """Place raw (timestamp, value) records on a uniform grid and fill gaps.

    ``raw`` is a sequence of ``(timestamp, value)`` pairs with strictly
    increasing timestamps that fall on a ``dt`` grid anchored at the first
    timestamp.  A value of ``None`` or NaN marks an explicitly missing
    sample; absent grid slots between records are missing too.

    Under ``linear-interpolate``, interior runs of at most ``max_run``
    missing samples are filled linearly and flagged ``INTERPOLATED``; longer
    runs (and runs touching either end of the series) escalate to dropping
    every day they touch.  Under ``drop-day``, any day containing a missing
    sample is excluded end-to-end.

    Days are consecutive blocks of ``samples_per_day`` grid slots counted
    from the first timestamp (default: one calendar day, 86400 / dt).  When
    interior days are dropped the surviving days are concatenated, so later
    nominal timestamps no longer reflect wall-clock time; slot arithmetic
    for partitioning stays valid because only whole days are removed.
    """
    records = list(raw)
    if not records:
        raise EmptyInput("no input records")
    if policy not in (GAP_LINEAR, GAP_DROP_DAY):
        raise ValueError(f"unknown gap policy {policy!r}")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if samples_per_day is None:
        samples_per_day = max(1, round(86400.0 / dt))

    t0 = float(records[0][0])
    n_slots = _grid_index(float(records[-1][0]), t0, dt) + 1
    values = np.full(n_slots, np.nan)
    prev_t = -math.inf
    for t, v in records:
        t = float(t)
        if t <= prev_t:
            raise NonMonotonicTimestamps(f"timestamp {t} after {prev_t}")
        prev_t = t
        idx = _grid_index(t, t0, dt)
        if v is not None and not (isinstance(v, float) and math.isnan(v)):
            values[idx] = float(v)

    missing = np.isnan(values)
    quality = np.zeros(n_slots, dtype=np.uint8)

    if policy == GAP_LINEAR and missing.any():
        for start, stop in _missing_runs(missing):
            interior = start > 0 and stop < n_slots
            if interior and stop - start <= max_run:
                left, right = values[start - 1], values[stop]
                frac = np.arange(1, stop - start + 1) / (stop - start + 1)
                values[start:stop] = left + frac * (right - left)
                quality[start:stop] = INTERPOLATED
                missing[start:stop] = False

    # any still-missing slot drops the whole day block containing it
    n_days = math.ceil(n_slots / samples_per_day)
    day_of_slot = np.arange(n_slots) // samples_per_day
    bad_days = np.unique(day_of_slot[missing])
    keep = ~np.isin(day_of_slot, bad_days)
    if not keep.any():
        raise AllDaysDropped(f"all {n_days} days contained unfillable gaps")
    if len(bad_days):
        logger.warning(
            "gap policy dropped %d of %d days", len(bad_days), n_days
        )

    first_kept = int(np.argmax(keep))
    return TimeSeries(
        values=values[keep],
        dt=dt,
        origin=t0 + first_kept * dt,
        quality=quality[keep],
    )


def _grid_index(t: float, t0: float, dt: float) -> int:
    offset = (t - t0) / dt
    idx = round(offset)
    if abs(offset - idx) > 1e-6:
        raise InconsistentSamplingInterval(
            f"timestamp {t} is not on the dt={dt} grid anchored at {t0}"
        )
    return int(idx)


def _missing_runs(missing: np.ndarray):
    """Yield (start, stop) of each maximal run of True values."""
    idx = np.flatnonzero(missing)
    if not len(idx):
        return
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate([[idx[0]], idx[breaks + 1]])
    stops = np.concatenate([idx[breaks] + 1, [idx[-1] + 1]])
    yield from zip(starts, stops)


def partition(x: TimeSeries, period_len: int) -> PartitionMatrix:
    """Reshape a series into the days-by-slots matrix.

    Row i is ``x[i*period_len : (i+1)*period_len]``; trailing samples that
    do not fill a complete row are discarded with a logged warning.  The
    series origin must already sit on a period boundary (the ingester aligns
    to midnight).
    """
    if period_len < 2:
        raise InvalidPeriod(f"period_len must be >= 2, got {period_len}")
    n = len(x)
    if n < period_len:
        raise SeriesTooShort(
            f"series of {n} samples is shorter than one period ({period_len})"
        )
    n_rows = n // period_len
    dropped = n - n_rows * period_len
    if dropped:
        logger.warning(
            "partition discarded %d trailing samples of an incomplete period",
            dropped,
        )
    data = x.values[: n_rows * period_len].reshape(n_rows, period_len).copy()
    return PartitionMatrix(data=data, dt=x.dt, origin=x.origin)


def column(m: PartitionMatrix, j: int) -> np.ndarray:
    """Across-days sub-series of slot j: (m[0][j], ..., m[N-1][j])."""
    if not 0 <= j < m.cols:
        raise IndexOutOfRange(f"column {j} outside 0..{m.cols - 1}")
    return m.data[:, j].copy()


def flatten(m: PartitionMatrix) -> TimeSeries:
    """Row-major concatenation; inverse of :func:`partition` on exact input."""
    return TimeSeries(values=m.data.ravel().copy(), dt=m.dt, origin=m.origin)
