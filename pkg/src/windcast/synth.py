"""Seeded synthetic wind-speed corpora.

Measured station data cannot ship with the package, so tests and demos run
on generated series: a diurnal corpus whose slot-dependent daily profile
plus day-to-day AR(1) noise mimics the structure the forecasters exploit,
and a white-noise control with no periodicity at all.  The legacy
RandomState generator is used on purpose: its byte-stable streams keep
seeded corpora identical across library versions.
"""

from __future__ import annotations

import math

import numpy as np

from .series import TimeSeries

__all__ = ["DEFAULT_ORIGIN", "make_diurnal_corpus", "make_white_noise_corpus"]

# 2004-01-01T00:00:00Z, a midnight so ingestion round trips keep slot 0
DEFAULT_ORIGIN = 1072915200.0


def make_diurnal_corpus(days: int, seed: int, *, dt: float = 600.0,
                        period_len: int = 144, mean_level: float = 6.0,
                        amplitude: float = 2.0, ar_coeff: float = 0.6,
                        noise_sd: float = 0.5,
                        origin: float = DEFAULT_ORIGIN) -> TimeSeries:
    """Generate days of a slot-periodic series with day-to-day memory.

    Slot j of day i is max(0, mu_j + e_ij) with the daily profile
    mu_j = mean_level + amplitude cos(2 pi j / period_len) and, per slot,
    an AR(1) chain across days e_ij = ar_coeff e_(i-1)j + N(0, noise_sd^2)
    started from its stationary distribution.
    """
    if days < 1:
        raise ValueError(f"days must be >= 1, got {days}")
    if not 0.0 <= ar_coeff < 1.0:
        raise ValueError("ar_coeff must lie in [0, 1) for a stationary chain")
    rng = np.random.RandomState(seed)
    slots = np.arange(period_len)
    mu = mean_level + amplitude * np.cos(2.0 * np.pi * slots / period_len)
    e = np.empty((days, period_len))
    e[0] = rng.standard_normal(period_len) * (
        noise_sd / math.sqrt(1.0 - ar_coeff * ar_coeff)
    )
    for i in range(1, days):
        e[i] = ar_coeff * e[i - 1] + rng.standard_normal(period_len) * noise_sd
    values = np.maximum(mu[np.newaxis, :] + e, 0.0).ravel()
    return TimeSeries(values=values, dt=dt, origin=origin)


def make_white_noise_corpus(days: int, seed: int, *, dt: float = 600.0,
                            period_len: int = 144, mean_level: float = 6.0,
                            noise_sd: float = 1.5,
                            origin: float = DEFAULT_ORIGIN) -> TimeSeries:
    """Generate a period-free control corpus (clamped white noise)."""
    if days < 1:
        raise ValueError(f"days must be >= 1, got {days}")
    rng = np.random.RandomState(seed)
    values = rng.standard_normal(days * period_len) * noise_sd + mean_level
    return TimeSeries(values=np.maximum(values, 0.0), dt=dt, origin=origin)
