"""Day-ahead forecasters and the hourly-RMSE evaluation harness.

Three methods share the DayForecast interface: ``partitioned-ar`` fits an
independent one-step AR model to every time-of-day slot across days,
``simple-ar`` fits a single AR model to a trailing window of the raw series
and iterates it a day ahead, and ``persistence`` repeats the last observed
value.  ``backtest`` replays any subset of them over held-out days and
aggregates hourly RMSE the way evaluation reports expect.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .burg import OrderCriterion, fit_burg, predict_multi, predict_one, select_order
from .errors import (
    EmptyList,
    EmptySeries,
    InvalidPeriod,
    LengthMismatch,
    MissingHistory,
    NotDivisible,
    NotEnoughDays,
    SeriesTooShort,
    UnknownMethod,
)
from .series import PartitionMatrix, TimeSeries, column, partition

__all__ = [
    "METHOD_PARTITIONED",
    "METHOD_SIMPLE",
    "METHOD_PERSISTENCE",
    "ALL_METHODS",
    "ForecastConfig",
    "DayForecast",
    "MethodScore",
    "EvalReport",
    "forecast_day_partitioned",
    "forecast_day_simple_ar",
    "forecast_persistence",
    "hourly_rmse",
    "averaged_rmse",
    "backtest",
]

METHOD_PARTITIONED = "partitioned-ar"
METHOD_SIMPLE = "simple-ar"
METHOD_PERSISTENCE = "persistence"
ALL_METHODS = (METHOD_PARTITIONED, METHOD_SIMPLE, METHOD_PERSISTENCE)


@dataclass(frozen=True)
class ForecastConfig:
    """Knobs shared by the forecasting methods.

    ``training_days`` limits per-slot fits to the most recent rows (None
    uses all history).  ``simple_ar_training_samples`` is the trailing
    window for the one-model baseline; None means 30 days worth.
    """

    period_len: int = 144
    order_criterion: OrderCriterion = field(default_factory=OrderCriterion.aic)
    training_days: int | None = None
    simple_ar_training_samples: int | None = None
    clamp_negative: bool = True

    def __post_init__(self):
        if self.period_len < 2:
            raise ValueError(f"period_len must be >= 2, got {self.period_len}")
        if self.training_days is not None and self.training_days < 3:
            raise ValueError("training_days must be >= 3")
        if (self.simple_ar_training_samples is not None
                and self.simple_ar_training_samples < self.period_len):
            raise ValueError(
                "simple_ar_training_samples must cover one period "
                f"({self.period_len} samples)"
            )

    @property
    def simple_window(self) -> int:
        """Trailing sample count the simple-AR baseline trains on."""
        if self.simple_ar_training_samples is not None:
            return self.simple_ar_training_samples
        return 30 * self.period_len


@dataclass(frozen=True)
class DayForecast:
    """One method's prediction for every slot of a single target day.

    ``per_slot_order`` records the AR order chosen per column and is only
    populated by the partitioned method.
    """

    values: np.ndarray
    method: str
    target_day_origin: float
    per_slot_order: np.ndarray | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or len(values) == 0:
            raise ValueError("values must be a non-empty vector")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if self.method not in ALL_METHODS:
            raise UnknownMethod(f"unknown method {self.method!r}")
        if self.per_slot_order is not None:
            orders = np.asarray(self.per_slot_order, dtype=int)
            if orders.shape != values.shape:
                raise ValueError("per_slot_order must match values in length")
            object.__setattr__(self, "per_slot_order", orders)


@dataclass(frozen=True)
class MethodScore:
    """Aggregated accuracy of one method over the evaluated days."""

    per_hour_rmse: np.ndarray
    overall_rmse: float

    def __post_init__(self):
        per_hour = np.asarray(self.per_hour_rmse, dtype=float)
        object.__setattr__(self, "per_hour_rmse", per_hour)
        if np.any(per_hour < 0) or self.overall_rmse < 0:
            raise ValueError("RMSE cannot be negative")


@dataclass(frozen=True)
class EvalReport:
    """Backtest outcome.

    ``per_method`` holds hour-of-day RMSE averaged across days plus the
    pooled overall RMSE (RMSE over every slot error of every day, which is
    not the mean of the hourly values).  ``per_day_hourly`` keeps the
    unaveraged per-day curves, one vector per entry of ``days_evaluated``,
    for serialization.  ``config`` records the settings that produced the
    numbers.
    """

    per_method: dict[str, MethodScore]
    days_evaluated: tuple[float, ...]
    per_day_hourly: dict[str, tuple[np.ndarray, ...]]
    config: ForecastConfig


def _clamp(values: np.ndarray, cfg: ForecastConfig) -> np.ndarray:
    if cfg.clamp_negative:
        return np.maximum(values, 0.0)
    return values


def _effective_criterion(criterion: OrderCriterion, n: int) -> OrderCriterion:
    """Adapt an aic/fpe cap to the sample count: min(cap, n // 3), >= 1.

    Keeps per-column fits well-posed when the history holds few days
    without touching an explicitly fixed order.
    """
    if criterion.kind == "fixed":
        return criterion
    cap = min(criterion.max_order, max(1, n // 3))
    if cap == criterion.max_order:
        return criterion
    return OrderCriterion(kind=criterion.kind, max_order=cap)


def forecast_day_partitioned(m: PartitionMatrix,
                             cfg: ForecastConfig = ForecastConfig()) -> DayForecast:
    """Predict the day after the matrix, one AR model per column.

    Each column (time-of-day slot) is treated as its own short series
    across days: select an order, fit by Burg, predict one step.  Columns
    with zero variance degenerate to their mean.  Negative predictions are
    clamped to zero when configured.

    Raises
    ------
    NotEnoughDays
        If the matrix has fewer than 3 rows.
    """
    if m.rows < 3:
        raise NotEnoughDays(f"need at least 3 days of history, got {m.rows}")
    values = np.empty(m.cols)
    orders = np.empty(m.cols, dtype=int)
    for j in range(m.cols):
        col = column(m, j)
        if cfg.training_days is not None:
            col = col[-cfg.training_days:]
        p = select_order(col, _effective_criterion(cfg.order_criterion, len(col)))
        model = fit_burg(col, p)
        values[j] = predict_one(model, col[::-1])
        orders[j] = model.order
    return DayForecast(
        values=_clamp(values, cfg),
        method=METHOD_PARTITIONED,
        target_day_origin=m.origin + m.rows * m.cols * m.dt,
        per_slot_order=orders,
    )


def forecast_day_simple_ar(x: TimeSeries,
                           cfg: ForecastConfig = ForecastConfig()) -> DayForecast:
    """Predict the next day by iterating one AR model fitted to the tail.

    Fits Burg to the trailing ``cfg.simple_window`` samples of the raw
    series and feeds predictions back for ``period_len`` steps.

    Raises
    ------
    SeriesTooShort
        If the series does not cover the training window.
    """
    window = cfg.simple_window
    if len(x) < window:
        raise SeriesTooShort(
            f"need {window} training samples, got {len(x)}"
        )
    tail = x.values[-window:]
    p = select_order(tail, _effective_criterion(cfg.order_criterion, window))
    model = fit_burg(tail, p)
    values = predict_multi(model, tail[::-1], cfg.period_len)
    return DayForecast(
        values=_clamp(np.asarray(values), cfg),
        method=METHOD_SIMPLE,
        target_day_origin=x.origin + len(x) * x.dt,
    )


def forecast_persistence(x: TimeSeries, period_len: int = 144) -> DayForecast:
    """Predict every slot of the next day as the last observed value.

    Raises
    ------
    EmptySeries
        If the series holds no samples.
    """
    if period_len < 1:
        raise InvalidPeriod(f"period_len must be >= 1, got {period_len}")
    if len(x) == 0:
        raise EmptySeries("persistence needs at least one observation")
    return DayForecast(
        values=np.full(period_len, x.values[-1]),
        method=METHOD_PERSISTENCE,
        target_day_origin=x.origin + len(x) * x.dt,
    )


def hourly_rmse(pred: DayForecast, actual,
                samples_per_hour: int = 6) -> np.ndarray:
    """RMSE of a day forecast within each hour.

    Returns one value per block of ``samples_per_hour`` consecutive slots.

    Raises
    ------
    LengthMismatch
        If ``actual`` is not slot-for-slot comparable to the forecast.
    NotDivisible
        If the day does not split into whole hours.
    """
    actual = np.asarray(actual, dtype=float)
    n = len(pred.values)
    if actual.shape != (n,):
        raise LengthMismatch(
            f"actual has shape {actual.shape}, forecast has {n} slots"
        )
    if samples_per_hour < 1 or n % samples_per_hour:
        raise NotDivisible(
            f"{n} slots do not divide into hours of {samples_per_hour}"
        )
    err = (pred.values - actual).reshape(-1, samples_per_hour)
    return np.sqrt(np.mean(err * err, axis=1))


def averaged_rmse(reports) -> np.ndarray:
    """Elementwise mean of per-day hourly RMSE vectors.

    Raises
    ------
    EmptyList
        If no vectors are given.
    LengthMismatch
        If the vectors disagree in length.
    """
    vectors = [np.asarray(r, dtype=float) for r in reports]
    if not vectors:
        raise EmptyList("no hourly RMSE vectors to average")
    length = len(vectors[0])
    for v in vectors[1:]:
        if len(v) != length:
            raise LengthMismatch(
                f"hourly vectors of lengths {length} and {len(v)}"
            )
    return np.mean(vectors, axis=0)


def _day_start_index(x: TimeSeries, day_origin: float, period_len: int) -> int:
    """Sample index where a slot-aligned target day begins."""
    pos = (day_origin - x.origin) / x.dt
    idx = int(round(pos))
    if abs(pos - idx) > 1e-6 or idx % period_len:
        raise MissingHistory(
            f"target day at {day_origin} is not aligned to the period grid"
        )
    if idx < 0 or idx + period_len > len(x):
        raise MissingHistory(
            f"target day at {day_origin} is not fully contained in the series"
        )
    return idx


def _required_history(method: str, cfg: ForecastConfig) -> int:
    if method == METHOD_PARTITIONED:
        return 3 * cfg.period_len
    if method == METHOD_SIMPLE:
        return cfg.simple_window
    return 1  # persistence


def backtest(x: TimeSeries, target_days, cfg: ForecastConfig = ForecastConfig(),
             methods=None) -> EvalReport:
    """Replay day-ahead forecasts over held-out days and score them.

    For each target-day origin timestamp, the history is truncated to the
    samples strictly before that midnight, each requested method forecasts
    the day, and hourly RMSE against the actual day is recorded.  Hourly
    curves are averaged across days; the overall figure pools every slot
    error instead.

    Raises
    ------
    UnknownMethod
        If ``methods`` names something other than the three methods.
    MissingHistory
        If a target day is absent, misaligned, or lacks the training
        history its methods need.
    EmptyList
        If no target days or no methods are requested.
    """
    if methods is None:
        methods = ALL_METHODS
    methods = list(methods)
    for name in methods:
        if name not in ALL_METHODS:
            raise UnknownMethod(f"unknown method {name!r}")
    methods = [name for name in ALL_METHODS if name in methods]
    target_days = list(target_days)
    if not target_days:
        raise EmptyList("no target days requested")
    if not methods:
        raise EmptyList("no methods requested")

    period = cfg.period_len
    hourly: dict[str, list[np.ndarray]] = {name: [] for name in methods}
    pooled: dict[str, list[np.ndarray]] = {name: [] for name in methods}
    for day in target_days:
        idx = _day_start_index(x, day, period)
        for name in methods:
            if idx < _required_history(name, cfg):
                raise MissingHistory(
                    f"{name} needs {_required_history(name, cfg)} samples "
                    f"before the target day, found {idx}"
                )
        history = TimeSeries(values=x.values[:idx], dt=x.dt, origin=x.origin,
                             quality=x.quality[:idx])
        actual = x.values[idx: idx + period]
        for name in methods:
            if name == METHOD_PARTITIONED:
                forecast = forecast_day_partitioned(partition(history, period), cfg)
            elif name == METHOD_SIMPLE:
                forecast = forecast_day_simple_ar(history, cfg)
            else:
                forecast = forecast_persistence(history, period)
            hourly[name].append(hourly_rmse(forecast, actual))
            pooled[name].append(forecast.values - actual)

    per_method = {}
    for name in methods:
        errors = np.concatenate(pooled[name])
        per_method[name] = MethodScore(
            per_hour_rmse=averaged_rmse(hourly[name]),
            overall_rmse=float(np.sqrt(np.mean(errors * errors))),
        )
    return EvalReport(
        per_method=per_method,
        days_evaluated=tuple(float(d) for d in target_days),
        per_day_hourly={name: tuple(hourly[name]) for name in methods},
        config=cfg,
    )
