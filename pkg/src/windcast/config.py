"""Run configuration: defaults, key=value file, environment lookup.

Every knob a subcommand reads lives on RunConfig, and every key of the
config file is the field of the same name, so the file format needs no
separate documentation.  Precedence is defaults < config file < CLI flags.
The config file is located by --config or, failing that, the
WINDCAST_CONFIG environment variable.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .burg import OrderCriterion
from .forecast import ForecastConfig
from .ingest import FORMAT_EPOCH, IngestSchema
from .series import GAP_DROP_DAY, GAP_LINEAR

__all__ = ["ENV_CONFIG", "RunConfig", "ConfigError", "load_config_file",
           "merge_config"]

ENV_CONFIG = "WINDCAST_CONFIG"


class ConfigError(ValueError):
    """Malformed config file or contradictory settings."""


@dataclass(frozen=True)
class RunConfig:
    """Flattened settings for one CLI run."""

    input: str | None = None
    out_dir: str = "."
    dt: float = 600.0
    timestamp_column: str | int = "timestamp"
    value_column: str | int = "value"
    timestamp_format: str = FORMAT_EPOCH
    delimiter: str = ","
    utc_offset: int = 0
    gap_policy: str = GAP_LINEAR
    max_gap_run: int = 6
    period_len: int = 144
    order_kind: str = "aic"
    max_order: int = 20
    fixed_order: int | None = None
    training_days: int | None = None
    simple_ar_training_samples: int | None = None
    clamp_negative: bool = True
    omega0: float = 6.0
    dj: float = 0.125
    detection_threshold: float = 2.0
    plots: bool = True
    seed: int | None = None

    def __post_init__(self):
        if self.gap_policy not in (GAP_LINEAR, GAP_DROP_DAY):
            raise ConfigError(f"unknown gap_policy {self.gap_policy!r}")
        if self.order_kind not in ("aic", "fpe", "fixed"):
            raise ConfigError(f"unknown order_kind {self.order_kind!r}")
        if self.order_kind == "fixed" and self.fixed_order is None:
            raise ConfigError("order_kind fixed needs fixed_order")

    def schema(self) -> IngestSchema:
        return IngestSchema(
            timestamp_column=self.timestamp_column,
            value_column=self.value_column,
            timestamp_format=self.timestamp_format,
            delimiter=self.delimiter,
            utc_offset=self.utc_offset,
        )

    def criterion(self) -> OrderCriterion:
        if self.order_kind == "fixed":
            return OrderCriterion.fixed(self.fixed_order,
                                        max_order=max(self.max_order,
                                                      self.fixed_order))
        if self.order_kind == "fpe":
            return OrderCriterion.fpe(max_order=self.max_order)
        return OrderCriterion.aic(max_order=self.max_order)

    def forecast(self) -> ForecastConfig:
        return ForecastConfig(
            period_len=self.period_len,
            order_criterion=self.criterion(),
            training_days=self.training_days,
            simple_ar_training_samples=self.simple_ar_training_samples,
            clamp_negative=self.clamp_negative,
        )


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _column_spec(text: str):
    return int(text) if text.lstrip("-").isdigit() else text


_PARSERS = {
    "input": str,
    "out_dir": str,
    "dt": float,
    "timestamp_column": _column_spec,
    "value_column": _column_spec,
    "timestamp_format": str,
    "delimiter": str,
    "utc_offset": int,
    "gap_policy": str,
    "max_gap_run": int,
    "period_len": int,
    "order_kind": str,
    "max_order": int,
    "fixed_order": int,
    "training_days": int,
    "simple_ar_training_samples": int,
    "clamp_negative": _parse_bool,
    "omega0": float,
    "dj": float,
    "detection_threshold": float,
    "plots": _parse_bool,
    "seed": int,
}


def load_config_file(path: str | None) -> dict:
    """Read `key = value` lines into typed overrides.

    With ``path`` None the WINDCAST_CONFIG environment variable is
    consulted; when that is unset too, no overrides apply.  Lines that are
    blank or start with # are skipped.

    Raises
    ------
    ConfigError
        For an unreadable file, an unknown key, or an unparsable value.
    """
    if path is None:
        path = os.environ.get(ENV_CONFIG)
        if not path:
            return {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    overrides: dict = {}
    for line_no, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, raw = stripped.partition("=")
        key = key.strip()
        if not sep or key not in _PARSERS:
            raise ConfigError(f"{path}:{line_no}: expected `key = value` "
                              f"with a known key, got {stripped!r}")
        try:
            overrides[key] = _PARSERS[key](raw.strip())
        except ValueError as exc:
            raise ConfigError(f"{path}:{line_no}: {exc}") from exc
    return overrides


def merge_config(file_overrides: dict, flag_overrides: dict) -> RunConfig:
    """Apply file then flag overrides on top of the defaults."""
    merged = dict(file_overrides)
    merged.update({k: v for k, v in flag_overrides.items() if v is not None})
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(merged) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**merged)
