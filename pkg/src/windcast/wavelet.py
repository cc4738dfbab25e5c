"""Morlet continuous wavelet transform and diurnal-period detection.

Conventions
-----------
The transform of a series f sampled at interval dt is the Riemann sum of

    W(a, b) = integral f(t) (1/sqrt(a)) psi*((t - b) / a) dt

with psi(t) = pi^-1/4 exp(i w0 t) exp(-t^2 / 2) and scales a fixed in
fractional powers of two, s_j = s0 * 2^(j * dj).  The admissibility
prefactor 1/sqrt(c_psi) is a global positive constant and is deliberately
omitted: the toolkit only ever locates maxima of the spectrum, which such a
constant cannot move.

Each scale is computed as an FFT convolution of the demeaned, zero-padded
(next power of two covering the kernel support) series against the sampled,
conjugated daughter wavelet, so it equals brute-force direct summation to
rounding error.  The kernel is truncated where the Gaussian envelope falls
below exp(-TRUNC^2 / 2).

Power is |W|^2 / a, which weighs oscillations of equal amplitude equally
across scales.  The scale-to-period conversion is the standard Morlet
equivalent Fourier period, 4 pi a / (w0 + sqrt(2 + w0^2)), about 1.033 a
for w0 = 6.  Edge effects are tracked by the e-folding cone of influence:
a coefficient at time index i and scale a is trusted only when
sqrt(2) * a fits inside the distance to the nearer series edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AllMasked, NoDominantPeriod, SeriesTooShort
from .series import TimeSeries

__all__ = [
    "MorletWavelet",
    "CwtGrid",
    "CwtResult",
    "PowerSpectrum",
    "morlet_value",
    "fourier_period",
    "scale_grid",
    "cwt",
    "power_spectrum",
    "global_spectrum",
    "spectrum_peak",
    "dominant_period",
]

# Gaussian e-foldings kept when sampling the wavelet kernel;
# exp(-8^2 / 2) ~ 1.3e-15, far below the FFT/direct agreement tolerance
TRUNC = 8.0

SECONDS_PER_DAY = 86400.0


@dataclass(frozen=True)
class MorletWavelet:
    """Morlet mother wavelet with centre frequency ``omega0``.

    Values of ``omega0`` below 5 make the missing admissibility correction
    term non-negligible; construct with ``allow_inadmissible=True`` to use
    them anyway.
    """

    omega0: float = 6.0
    allow_inadmissible: bool = False

    def __post_init__(self):
        if self.omega0 < 5.0 and not self.allow_inadmissible:
            raise ValueError(
                f"omega0 {self.omega0} < 5 is practically inadmissible; "
                "pass allow_inadmissible=True to override"
            )


@dataclass(frozen=True)
class CwtGrid:
    """Geometric scale grid s_j = s0 * 2^(j * dj), j = 0..num_scales-1."""

    s0: float
    dj: float = 0.125
    num_scales: int = 1

    def __post_init__(self):
        if self.s0 <= 0:
            raise ValueError("s0 must be positive")
        if self.dj <= 0:
            raise ValueError("dj must be positive")
        if self.num_scales < 1:
            raise ValueError("num_scales must be >= 1")

    @classmethod
    def default(cls, dt: float, *, dj: float = 0.125,
                max_period: float = 4.0 * SECONDS_PER_DAY,
                omega0: float = 6.0) -> "CwtGrid":
        """Grid from s0 = 2 dt up to the scale whose equivalent Fourier
        period first reaches ``max_period`` (default four days, bracketing
        the diurnal band with margin)."""
        s0 = 2.0 * dt
        factor = fourier_period(1.0, omega0)
        target = max_period / factor
        j_max = max(0, math.ceil(math.log2(target / s0) / dj))
        return cls(s0=s0, dj=dj, num_scales=j_max + 1)


@dataclass(frozen=True)
class CwtResult:
    """Complex wavelet coefficients over (time, scale).

    ``coefficients[i, j]`` is W(s_j, t_i); ``coi[i]`` is the largest scale
    (seconds) whose e-folding time fits between t_i and the nearer series
    edge, so entries with ``scales[j] > coi[i]`` are edge-affected.
    """

    coefficients: np.ndarray
    scales: np.ndarray
    dt: float
    coi: np.ndarray

    def __post_init__(self):
        if self.coefficients.shape != (len(self.coi), len(self.scales)):
            raise ValueError("coefficient array must be (time, scale)")


@dataclass(frozen=True)
class PowerSpectrum:
    """|W|^2 / scale over (time, scale), with per-scale Fourier periods."""

    power: np.ndarray
    periods: np.ndarray
    scales: np.ndarray
    dt: float
    coi: np.ndarray

    def __post_init__(self):
        if np.any(self.power < 0):
            raise ValueError("power must be non-negative")
        if np.any(np.diff(self.periods) <= 0):
            raise ValueError("periods must increase with scale")


def morlet_value(t, wavelet: MorletWavelet = MorletWavelet()):
    """Mother wavelet pi^-1/4 exp(i w0 t) exp(-t^2 / 2) at dimensionless t."""
    t = np.asarray(t, dtype=float)
    out = np.pi ** -0.25 * np.exp(1j * wavelet.omega0 * t - 0.5 * t * t)
    return complex(out) if out.ndim == 0 else out


def fourier_period(scale, omega0: float = 6.0):
    """Equivalent Fourier period of the Morlet at a given scale.

    period = scale * 4 pi / (w0 + sqrt(2 + w0^2)); the factor is ~1.033
    for w0 = 6.
    """
    return scale * 4.0 * np.pi / (omega0 + math.sqrt(2.0 + omega0 * omega0))


def scale_grid(grid: CwtGrid) -> np.ndarray:
    """Materialise the grid's scales in seconds."""
    j = np.arange(grid.num_scales)
    return grid.s0 * 2.0 ** (j * grid.dj)


def _coi_scales(n: int, dt: float) -> np.ndarray:
    """Largest trusted scale per time index (e-folding time sqrt(2) s)."""
    i = np.arange(n)
    return np.minimum(i, n - 1 - i) * dt / math.sqrt(2.0)


def cwt(x: TimeSeries, wavelet: MorletWavelet = MorletWavelet(),
        grid: CwtGrid | None = None) -> CwtResult:
    """Continuous wavelet transform of a series.

    The series is demeaned, then for each scale convolved against the
    conjugated daughter wavelet by FFT with zero padding to the next power
    of two that covers the kernel support (no circular wrap-around).

    Raises
    ------
    SeriesTooShort
        If the series has fewer than 4 samples.
    """
    n = len(x)
    if n < 4:
        raise SeriesTooShort(f"cwt needs at least 4 samples, got {n}")
    if grid is None:
        grid = CwtGrid.default(x.dt, omega0=wavelet.omega0)
    scales = scale_grid(grid)
    d = x.values - x.values.mean()

    coeffs = np.empty((n, len(scales)), dtype=complex)
    fx_cache: dict[int, np.ndarray] = {}
    for j, s in enumerate(scales):
        rel = s / x.dt  # scale in sample units
        half = int(math.ceil(TRUNC * rel))
        # W[i] = sum_t x[t] psi*((t-i) dt/s) dt/sqrt(s) = (x * h)[i]
        # with h[m] = psi(m dt/s) dt/sqrt(s), because psi*(-t) = psi(t)
        m = np.arange(-half, half + 1)
        kernel = morlet_value(m / rel, wavelet) * (x.dt / math.sqrt(s))
        size = _next_pow2(n + 2 * half)
        if size not in fx_cache:
            fx_cache[size] = np.fft.fft(d, size)
        wrapped = np.zeros(size, dtype=complex)
        wrapped[: half + 1] = kernel[half:]
        wrapped[size - half:] = kernel[:half]
        conv = np.fft.ifft(fx_cache[size] * np.fft.fft(wrapped))
        coeffs[:, j] = conv[:n]

    return CwtResult(coefficients=coeffs, scales=scales, dt=x.dt,
                     coi=_coi_scales(n, x.dt))


def _next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def power_spectrum(result: CwtResult,
                   omega0: float = 6.0) -> PowerSpectrum:
    """Wavelet power |W|^2 / scale with per-scale equivalent periods."""
    power = np.abs(result.coefficients) ** 2 / result.scales[np.newaxis, :]
    return PowerSpectrum(
        power=power,
        periods=fourier_period(result.scales, omega0),
        scales=result.scales,
        dt=result.dt,
        coi=result.coi,
    )


def _scale_means(spectrum: PowerSpectrum, mask_coi: bool) -> np.ndarray:
    """Per-scale time-mean power; NaN where a scale is fully edge-affected."""
    if not mask_coi:
        return spectrum.power.mean(axis=0)
    trusted = spectrum.scales[np.newaxis, :] <= spectrum.coi[:, np.newaxis]
    counts = trusted.sum(axis=0)
    sums = np.where(trusted, spectrum.power, 0.0).sum(axis=0)
    return np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)


def global_spectrum(spectrum: PowerSpectrum, mask_coi: bool = True) -> np.ndarray:
    """Arithmetic time-mean of power at each scale.

    With ``mask_coi`` the mean skips edge-affected samples; if that leaves
    any scale with no sample at all, :class:`AllMasked` is raised.
    """
    means = _scale_means(spectrum, mask_coi)
    if np.any(np.isnan(means)):
        bad = int(np.flatnonzero(np.isnan(means))[0])
        raise AllMasked(
            f"scale {spectrum.scales[bad]:.6g}s lies entirely inside the "
            "cone of influence"
        )
    return means


def spectrum_peak(scales: np.ndarray, means: np.ndarray,
                  threshold: float = 2.0):
    """Locate a significant peak in a per-scale mean-power curve.

    The peak is the argmax of the curve.  Significance is judged on the
    scale-compensated curve ``scales * means``, which is flat (up to
    sampling noise) when the input is white noise under the |W|^2 / scale
    power convention: the peak stands only if its compensated value exceeds
    ``threshold`` times the compensated median.  Returns ``(index, ratio)``
    or ``None`` when no scale stands out.
    """
    if len(means) == 0 or np.all(means <= 0):
        return None
    j = int(np.argmax(means))
    compensated = scales * means
    reference = float(np.median(compensated))
    if reference <= 0:
        return None
    ratio = float(compensated[j] / reference)
    if ratio <= threshold:
        return None
    return j, ratio


def dominant_period(x: TimeSeries, wavelet: MorletWavelet = MorletWavelet(),
                    grid: CwtGrid | None = None, *,
                    threshold: float = 2.0) -> int:
    """Detect the dominant oscillation period, in samples.

    Runs cwt -> power_spectrum -> COI-masked per-scale means, locates the
    peak scale, and converts its equivalent Fourier period to samples
    (nearest integer).  Scales that never leave the cone of influence are
    excluded up front.

    Raises
    ------
    SeriesTooShort
        If no requested scale has even one trusted sample.
    NoDominantPeriod
        If the spectrum is flat, as for white noise (see
        :func:`spectrum_peak`).
    """
    n = len(x)
    if n >= 4:
        if grid is None:
            grid = CwtGrid.default(x.dt, omega0=wavelet.omega0)
        scales = scale_grid(grid)
        # a scale is usable when some index trusts it: sqrt(2) s <= (n-1)/2 dt
        usable = scales * math.sqrt(2.0) <= (n - 1) / 2 * x.dt
        if not usable.any():
            raise SeriesTooShort(
                "no scale lies outside the cone of influence for "
                f"{n} samples"
            )
        grid = CwtGrid(s0=grid.s0, dj=grid.dj,
                       num_scales=int(np.flatnonzero(usable)[-1]) + 1)
    result = cwt(x, wavelet, grid)
    spectrum = power_spectrum(result, wavelet.omega0)
    means = global_spectrum(spectrum, mask_coi=True)
    peak = spectrum_peak(spectrum.scales, means, threshold)
    if peak is None:
        raise NoDominantPeriod(
            f"no scale exceeds {threshold}x the spectrum median"
        )
    j, _ = peak
    return int(round(spectrum.periods[j] / x.dt))
