"""Deterministic SVG charts built without a plotting toolchain.

Both emitters render the complete document into memory first and only then
touch the filesystem, so a validation failure never leaves a partial file.
All coordinates are formatted with fixed precision and every iteration
order is explicit, which makes repeated runs byte-identical: the plots can
be regression-tested with a plain file comparison.

Data series in the day-forecast chart are the only ``<polyline>`` elements
in the document (axes and grids are ``<line>``), so a structural test can
count series without parsing geometry.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import AllMasked, EmptyInput, LengthMismatch, WriteError
from .forecast import ALL_METHODS, DayForecast
from .wavelet import PowerSpectrum, global_spectrum, spectrum_peak

__all__ = ["METHOD_COLORS", "ACTUAL_COLOR", "emit_forecast_plot",
           "emit_spectrum_plot"]

ACTUAL_COLOR = "#222222"
METHOD_COLORS = {
    "partitioned-ar": "#c0392b",
    "simple-ar": "#2e6da4",
    "persistence": "#2f8f5b",
}

FONT = 'font-family="sans-serif" font-size="11"'

# low-to-high power colour ramp for the scalogram
_RAMP = ("#440154", "#46327e", "#365c8d", "#277f8e",
         "#1fa187", "#4ac16d", "#a0da39", "#fde725")


def _f(value: float) -> str:
    return f"{value:.2f}"


def _text(x: float, y: float, s: str, anchor: str = "start",
          extra: str = "") -> str:
    return (f'<text x="{_f(x)}" y="{_f(y)}" {FONT} '
            f'text-anchor="{anchor}"{extra}>{s}</text>')


def _line(x1: float, y1: float, x2: float, y2: float, stroke: str,
          width: float = 1.0) -> str:
    return (f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="{stroke}" stroke-width="{width:g}"/>')


def _write(out_path, parts) -> None:
    body = "\n".join(parts) + "\n"
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(body)
    except OSError as exc:
        raise WriteError(f"cannot write {out_path}: {exc}") from exc


def _nice_step(span: float, target: int = 5) -> float:
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if mult * mag >= raw:
            return mult * mag
    return 10.0 * mag


def _slot_label(slot: int, period_len: int) -> str:
    minutes = slot * 1440 // period_len
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def emit_forecast_plot(actual, forecasts: dict[str, DayForecast],
                       out_path) -> None:
    """Write a day-forecast comparison chart as a standalone SVG.

    One polyline per forecast method, plus one for ``actual`` when it is
    given (pass None when the target day has not been observed).  Inputs
    are validated before anything is written.

    Raises
    ------
    LengthMismatch
        If the series disagree on slot count.
    EmptyInput
        If there is nothing to plot.
    WriteError
        If the file cannot be written.
    """
    series: list[tuple[str, np.ndarray, str]] = []
    if actual is not None:
        actual = np.asarray(actual, dtype=float)
        series.append(("actual", actual, ACTUAL_COLOR))
    order = [m for m in ALL_METHODS if m in forecasts]
    order += sorted(set(forecasts) - set(order))
    for name in order:
        series.append((name, forecasts[name].values,
                       METHOD_COLORS.get(name, "#888888")))
    if not series:
        raise EmptyInput("nothing to plot")
    period_len = len(series[0][1])
    for name, values, _ in series:
        if len(values) != period_len:
            raise LengthMismatch(
                f"{name} has {len(values)} slots, expected {period_len}"
            )
    if period_len < 2:
        raise EmptyInput("need at least two slots to draw a line")

    width, height = 720.0, 380.0
    left, right, top, bottom = 52.0, 16.0, 20.0, 42.0
    plot_w, plot_h = width - left - right, height - top - bottom
    ymax = max(1.0, 1.05 * max(float(v.max()) for _, v, _ in series))
    ymin = min(0.0, min(float(v.min()) for _, v, _ in series))
    step = _nice_step(ymax - ymin)

    def sx(slot: float) -> float:
        return left + slot / (period_len - 1) * plot_w

    def sy(value: float) -> float:
        return top + plot_h - (value - ymin) / (ymax - ymin) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" '
        f'height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
        f'<rect width="{width:g}" height="{height:g}" fill="#ffffff"/>',
    ]
    tick = 0.0 if ymin == 0 else step * math.floor(ymin / step)
    while tick <= ymax + 1e-9:
        y = sy(tick)
        parts.append(_line(left, y, left + plot_w, y, "#dddddd"))
        parts.append(_text(left - 6, y + 3.5, f"{tick:g}", "end"))
        tick += step
    for slot in (0, period_len // 4, period_len // 2,
                 3 * period_len // 4, period_len - 1):
        x = sx(slot)
        parts.append(_line(x, top + plot_h, x, top + plot_h + 4, "#444444"))
        parts.append(_text(x, top + plot_h + 16, _slot_label(slot, period_len),
                           "middle"))
    parts.append(_line(left, top, left, top + plot_h, "#444444"))
    parts.append(_line(left, top + plot_h, left + plot_w, top + plot_h,
                       "#444444"))
    parts.append(_text(left + plot_w / 2, height - 8, "time of day", "middle"))
    parts.append(_text(14, top + plot_h / 2, "wind speed (m/s)", "middle",
                       f' transform="rotate(-90 14 {_f(top + plot_h / 2)})"'))

    for name, values, color in series:
        points = " ".join(f"{_f(sx(i))},{_f(sy(v))}"
                          for i, v in enumerate(values))
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5" points="{points}"/>')

    legend_x = left + plot_w - 130
    for row, (name, _, color) in enumerate(series):
        y = top + 12 + 16 * row
        parts.append(_line(legend_x, y - 4, legend_x + 22, y - 4, color, 2.0))
        parts.append(_text(legend_x + 28, y, name))
    parts.append("</svg>")
    _write(out_path, parts)


def emit_spectrum_plot(spectrum: PowerSpectrum, out_path, *,
                       threshold: float = 2.0) -> None:
    """Write a scalogram with COI shading and a scale-mean side panel.

    The heatmap shows power over time and log2 period; the shaded wedge
    marks edge-affected cells.  The side panel plots the per-scale mean
    with the detected peak marked, or a note when no period stands out.

    Raises
    ------
    EmptyInput
        If the spectrum holds no coefficients.
    WriteError
        If the file cannot be written.
    """
    if spectrum.power.size == 0:
        raise EmptyInput("empty power spectrum")
    n, num_scales = spectrum.power.shape
    try:
        means = global_spectrum(spectrum, mask_coi=True)
    except AllMasked:
        means = global_spectrum(spectrum, mask_coi=False)
    peak = spectrum_peak(spectrum.scales, means, threshold)

    width, height = 760.0, 420.0
    left, top = 56.0, 22.0
    map_w, map_h = 450.0, 330.0
    panel_x, panel_w = 570.0, 170.0
    bins = min(n, 160)
    bin_of = (np.arange(n) * bins) // n
    counts = np.bincount(bin_of, minlength=bins)
    binned = np.empty((bins, num_scales))
    for j in range(num_scales):
        binned[:, j] = (np.bincount(bin_of, weights=spectrum.power[:, j],
                                    minlength=bins) / counts)
    vmax = float(binned.max())

    log_p = np.log2(spectrum.periods)
    span = log_p[-1] - log_p[0] if num_scales > 1 else 1.0

    def py(period: float) -> float:
        frac = (math.log2(period) - log_p[0]) / span
        return top + map_h - min(max(frac, 0.0), 1.0) * map_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" '
        f'height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
        f'<rect width="{width:g}" height="{height:g}" fill="#ffffff"/>',
    ]
    cell_w = map_w / bins
    cell_h = map_h / num_scales
    for j in range(num_scales):
        y = top + map_h - (j + 1) * cell_h
        for b in range(bins):
            level = 0 if vmax == 0 else min(int(binned[b, j] / vmax * 8), 7)
            parts.append(
                f'<rect x="{_f(left + b * cell_w)}" y="{_f(y)}" '
                f'width="{_f(cell_w + 0.3)}" height="{_f(cell_h + 0.3)}" '
                f'fill="{_RAMP[level]}"/>'
            )

    centers = [(int(np.flatnonzero(bin_of == b)[0])
                + int(np.flatnonzero(bin_of == b)[-1])) / 2.0
               for b in range(bins)]
    coi_points = []
    for b, center in enumerate(centers):
        scale = min(center, n - 1 - center) * spectrum.dt / math.sqrt(2.0)
        period = max(scale * float(spectrum.periods[0] / spectrum.scales[0]),
                     float(spectrum.periods[0]) * 1e-9)
        x = left + (b + 0.5) * cell_w
        coi_points.append(f"{_f(x)},{_f(py(period))}")
    wedge = (f"{_f(left)},{_f(py(spectrum.periods[0]) )} "
             + " ".join(coi_points)
             + f" {_f(left + map_w)},{_f(py(spectrum.periods[0]))}"
             + f" {_f(left + map_w)},{_f(top)} {_f(left)},{_f(top)}")
    parts.append(f'<polygon points="{wedge}" fill="#000000" '
                 f'fill-opacity="0.35"/>')

    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        idx = min(int(frac * (n - 1)), n - 1)
        x = left + frac * map_w
        days = idx * spectrum.dt / 86400.0
        parts.append(_line(x, top + map_h, x, top + map_h + 4, "#444444"))
        parts.append(_text(x, top + map_h + 16, f"{days:.3g}d", "middle"))
    for j in np.unique(np.linspace(0, num_scales - 1, 5).astype(int)):
        y = top + map_h - (j + 0.5) * cell_h
        hours = spectrum.periods[j] / 3600.0
        parts.append(_text(left - 6, y + 3.5, f"{hours:.3g}h", "end"))
    parts.append(_text(left + map_w / 2, top - 8, "wavelet power", "middle"))
    parts.append(_text(left + map_w / 2, height - 8, "time", "middle"))
    parts.append(_text(14, top + map_h / 2, "period", "middle",
                       f' transform="rotate(-90 14 {_f(top + map_h / 2)})"'))

    mmax = float(means.max())
    parts.append(_line(panel_x, top, panel_x, top + map_h, "#444444"))
    parts.append(_line(panel_x, top + map_h, panel_x + panel_w, top + map_h,
                       "#444444"))
    parts.append(_text(panel_x + panel_w / 2, top - 8, "scale mean", "middle"))
    coords = []
    for j in range(num_scales):
        frac = 0.0 if mmax == 0 else means[j] / mmax
        x = panel_x + frac * panel_w
        coords.append((x, top + map_h - (j + 0.5) * cell_h))
    path = "M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in coords)
    parts.append(f'<path d="{path}" fill="none" stroke="#2e6da4" '
                 f'stroke-width="1.5"/>')
    if peak is not None:
        j, _ = peak
        x, y = coords[j]
        parts.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3.5" '
                     f'fill="#c0392b"/>')
        samples = int(round(spectrum.periods[j] / spectrum.dt))
        note = f"peak period: {samples} samples"
    else:
        note = "no dominant period"
    parts.append(_text(panel_x, height - 8, note))
    parts.append("</svg>")
    _write(out_path, parts)
