"""Command-line surface.

Subcommands: ``synth`` writes a seeded synthetic diurnal corpus,
``detect-period`` prints the dominant period of an ingested series in
samples, ``forecast`` produces day-ahead forecasts for one target day, and
``backtest`` scores the methods over held-out days.

Exit codes: 0 on success, 1 on usage or configuration errors, 2 on data
errors.  Diagnostics go to stderr; machine output goes to files or stdout.
Every RunConfig key can come from a config file (--config or the
WINDCAST_CONFIG environment variable) and is overridable by the flag of
the same name; flags win.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from datetime import datetime, timezone

from .config import ConfigError, RunConfig, load_config_file, merge_config
from .errors import MissingHistory, WindcastError
from .figures import emit_backtest_figure
from .forecast import (
    ALL_METHODS,
    METHOD_PARTITIONED,
    METHOD_SIMPLE,
    backtest,
    forecast_day_partitioned,
    forecast_day_simple_ar,
    forecast_persistence,
)
from .ingest import load_csv, save_csv
from .series import TimeSeries, partition
from .svgplot import emit_forecast_plot, emit_spectrum_plot
from .synth import make_diurnal_corpus
from .wavelet import MorletWavelet, cwt, dominant_period, power_spectrum

__all__ = ["run_cli", "main"]

SECONDS_PER_DAY = 86400


class _UsageError(Exception):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we map usage to 1
        raise _UsageError(message, self.format_usage())


def _column_spec(text: str):
    return int(text) if text.lstrip("-").isdigit() else text


def _config_flags() -> _Parser:
    common = _Parser(add_help=False)
    group = common.add_argument_group("configuration")
    group.add_argument("--config", help="key = value config file "
                       "(default: $WINDCAST_CONFIG)")
    group.add_argument("--input", "-i", help="delimited input series")
    group.add_argument("--out-dir", help="directory for generated files")
    group.add_argument("--dt", type=float, help="sampling interval, seconds")
    group.add_argument("--timestamp-column", type=_column_spec)
    group.add_argument("--value-column", type=_column_spec)
    group.add_argument("--timestamp-format",
                       help="epoch-seconds, ISO-8601, or a strptime pattern")
    group.add_argument("--delimiter")
    group.add_argument("--utc-offset", type=int,
                       help="station local offset from UTC, minutes")
    group.add_argument("--gap-policy",
                       choices=("linear-interpolate", "drop-day"))
    group.add_argument("--max-gap-run", type=int,
                       help="longest interpolatable gap, samples")
    group.add_argument("--period-len", type=int, help="slots per day")
    group.add_argument("--order-kind", choices=("aic", "fpe", "fixed"))
    group.add_argument("--max-order", type=int)
    group.add_argument("--fixed-order", type=int)
    group.add_argument("--training-days", type=int)
    group.add_argument("--simple-ar-training-samples", type=int)
    group.add_argument("--clamp-negative", action=argparse.BooleanOptionalAction,
                       default=None)
    group.add_argument("--omega0", type=float)
    group.add_argument("--dj", type=float, help="scale grid spacing, octaves")
    group.add_argument("--detection-threshold", type=float)
    group.add_argument("--plots", action=argparse.BooleanOptionalAction,
                       default=None)
    group.add_argument("--seed", type=int)
    return common


def _build_parser() -> _Parser:
    common = _config_flags()
    parser = _Parser(prog="windcast",
                     description="day-ahead wind-speed forecasting toolkit")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("synth", parents=[common],
                       help="write a seeded synthetic diurnal corpus")
    p.add_argument("--days", type=int, default=120)
    p.add_argument("--out", help="output CSV (default: <out-dir>/corpus.csv)")

    sub.add_parser("detect-period", parents=[common],
                   help="print the dominant period of a series, in samples")

    p = sub.add_parser("forecast", parents=[common],
                       help="day-ahead forecasts for one target day")
    p.add_argument("--target-day",
                   help="day origin as ISO date or epoch seconds "
                        "(default: the day after the observed series)")
    p.add_argument("--methods", help="comma-separated subset of "
                                     + ",".join(ALL_METHODS))

    p = sub.add_parser("backtest", parents=[common],
                       help="score the methods over held-out days")
    p.add_argument("--target-days",
                   help="comma-separated ISO dates or epoch seconds")
    p.add_argument("--last-days", type=int, default=4,
                   help="fallback: use the last N full days")
    p.add_argument("--methods", help="comma-separated subset of "
                                     + ",".join(ALL_METHODS))
    return parser


def _flag_overrides(args: argparse.Namespace) -> dict:
    return {f.name: getattr(args, f.name, None)
            for f in dataclasses.fields(RunConfig)}


def _parse_methods(text: str | None) -> list[str]:
    if text is None:
        return list(ALL_METHODS)
    names = [part.strip() for part in text.split(",") if part.strip()]
    bad = [name for name in names if name not in ALL_METHODS]
    if bad or not names:
        raise _UsageError(f"--methods must name a subset of "
                          f"{','.join(ALL_METHODS)}, got {text!r}")
    return names


def _parse_day(text: str, utc_offset: int) -> float:
    try:
        return float(text)
    except ValueError:
        pass
    try:
        stamp = datetime.fromisoformat(text)
    except ValueError:
        raise _UsageError(f"cannot parse day {text!r}") from None
    if stamp.tzinfo is None:
        return stamp.replace(tzinfo=timezone.utc).timestamp() - utc_offset * 60
    return stamp.timestamp()


def _day_label(day: float, utc_offset: int) -> str:
    local = datetime.fromtimestamp(day + utc_offset * 60, tz=timezone.utc)
    return local.date().isoformat()


def _load_series(cfg: RunConfig) -> TimeSeries:
    if cfg.input is None:
        raise _UsageError("an input series is required (--input or config)")
    return load_csv(cfg.input, cfg.schema(), dt=cfg.dt,
                    policy=cfg.gap_policy, max_run=cfg.max_gap_run)


def _out_path(cfg: RunConfig, name: str) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return os.path.join(cfg.out_dir, name)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _cmd_synth(args: argparse.Namespace, cfg: RunConfig) -> int:
    if cfg.seed is None:
        raise _UsageError("synth requires --seed for a reproducible corpus")
    corpus = make_diurnal_corpus(args.days, cfg.seed, dt=cfg.dt,
                                 period_len=cfg.period_len)
    out = args.out or _out_path(cfg, "corpus.csv")
    save_csv(corpus, out, cfg.schema())
    _note(f"wrote {args.days}-day corpus (seed {cfg.seed}) to {out}")
    return 0


def _cmd_detect_period(args: argparse.Namespace, cfg: RunConfig) -> int:
    x = _load_series(cfg)
    wavelet = MorletWavelet(cfg.omega0)
    if cfg.plots:
        spectrum = power_spectrum(cwt(x, wavelet), cfg.omega0)
        plot = _out_path(cfg, "spectrum.svg")
        emit_spectrum_plot(spectrum, plot, threshold=cfg.detection_threshold)
        _note(f"wrote {plot}")
    period = dominant_period(x, wavelet, threshold=cfg.detection_threshold)
    print(period)
    return 0


def _target_index(x: TimeSeries, day: float, period_len: int) -> int:
    pos = (day - x.origin) / x.dt
    idx = int(round(pos))
    full = len(x) // period_len * period_len
    if abs(pos - idx) > 1e-6 or idx % period_len or not 0 <= idx <= full:
        raise MissingHistory(
            f"target day {day} must start a day within the series or "
            "follow its last full day"
        )
    return idx


def _run_method(name: str, history: TimeSeries, cfg: RunConfig):
    fcfg = cfg.forecast()
    if name == METHOD_PARTITIONED:
        return forecast_day_partitioned(partition(history, cfg.period_len), fcfg)
    if name == METHOD_SIMPLE:
        return forecast_day_simple_ar(history, fcfg)
    return forecast_persistence(history, cfg.period_len)


def _cmd_forecast(args: argparse.Namespace, cfg: RunConfig) -> int:
    x = _load_series(cfg)
    period = cfg.period_len
    methods = _parse_methods(args.methods)
    if args.target_day is not None:
        day = _parse_day(args.target_day, cfg.utc_offset)
    else:
        day = x.origin + (len(x) // period) * period * x.dt
    idx = _target_index(x, day, period)
    history = TimeSeries(values=x.values[:idx], dt=x.dt, origin=x.origin,
                         quality=x.quality[:idx])
    actual = x.values[idx: idx + period] if idx + period <= len(x) else None

    forecasts = {name: _run_method(name, history, cfg) for name in methods}
    ordered = [name for name in ALL_METHODS if name in forecasts]
    out_csv = _out_path(cfg, "forecast.csv")
    with open(out_csv, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["slot", "timestamp"] + ordered)
        for s in range(period):
            stamp = int(day + s * x.dt)
            writer.writerow([s + 1, stamp]
                            + [f"{forecasts[m].values[s]:.6g}" for m in ordered])
    _note(f"wrote {out_csv}")
    if cfg.plots:
        out_svg = _out_path(cfg, "forecast.svg")
        emit_forecast_plot(actual, forecasts, out_svg)
        _note(f"wrote {out_svg}")
    return 0


def _backtest_targets(args: argparse.Namespace, cfg: RunConfig,
                      x: TimeSeries) -> list[float]:
    if args.target_days:
        return [_parse_day(part.strip(), cfg.utc_offset)
                for part in args.target_days.split(",") if part.strip()]
    if args.last_days < 1:
        raise _UsageError("--last-days must be >= 1")
    full = len(x) // cfg.period_len
    day_span = cfg.period_len * x.dt
    return [x.origin + (full - args.last_days + k) * day_span
            for k in range(args.last_days)]


def _cmd_backtest(args: argparse.Namespace, cfg: RunConfig) -> int:
    x = _load_series(cfg)
    methods = _parse_methods(args.methods)
    report = backtest(x, _backtest_targets(args, cfg, x), cfg.forecast(),
                      methods)

    out_csv = _out_path(cfg, "report.csv")
    with open(out_csv, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["method", "day", "hour", "rmse"])
        for name in report.per_method:
            for day, hourly in zip(report.days_evaluated,
                                   report.per_day_hourly[name]):
                label = _day_label(day, cfg.utc_offset)
                for hour, rmse in enumerate(hourly, 1):
                    writer.writerow([name, label, hour, f"{rmse:.6g}"])

    payload = {
        "config": dataclasses.asdict(report.config),
        "days_evaluated": [
            {"date": _day_label(day, cfg.utc_offset), "timestamp": day}
            for day in report.days_evaluated
        ],
        "methods": {
            name: {
                "per_hour_rmse": [float(v) for v in score.per_hour_rmse],
                "overall_rmse": score.overall_rmse,
            }
            for name, score in report.per_method.items()
        },
    }
    out_json = _out_path(cfg, "report.json")
    with open(out_json, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")

    for name, score in report.per_method.items():
        _note(f"{name}: overall RMSE {score.overall_rmse:.4f} m/s")
    _note(f"wrote {out_csv}")
    _note(f"wrote {out_json}")
    if cfg.plots:
        out_svg = _out_path(cfg, "report.svg")
        emit_backtest_figure(report, out_svg)
        _note(f"wrote {out_svg}")
    return 0


_HANDLERS = {
    "synth": _cmd_synth,
    "detect-period": _cmd_detect_period,
    "forecast": _cmd_forecast,
    "backtest": _cmd_backtest,
}


def run_cli(argv=None) -> int:
    """Parse arguments, run one subcommand, and map failures to exit codes."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = merge_config(load_config_file(args.config), _flag_overrides(args))
    except (_UsageError, ConfigError) as exc:
        usage = getattr(exc, "usage", "")
        if usage:
            print(usage, end="", file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args, cfg)
    except _UsageError as exc:
        if exc.usage:
            print(exc.usage, end="", file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (WindcastError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
