"""Backtest report figure rendered with matplotlib.

The hourly-RMSE comparison benefits from a real plotting toolkit (markers,
autoscaled ticks, antialiased text), so unlike the single-day SVG charts it
is drawn with matplotlib.  Output stays byte-reproducible: the SVG hash
salt is pinned and the date metadata suppressed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import WriteError
from .forecast import EvalReport
from .svgplot import METHOD_COLORS

__all__ = ["emit_backtest_figure"]


def emit_backtest_figure(report: EvalReport, out_path) -> None:
    """Plot the per-method hourly RMSE curves averaged across target days.

    Raises
    ------
    WriteError
        If the file cannot be written.
    """
    plt.rcParams["svg.hashsalt"] = "windcast"
    fig, ax = plt.subplots(figsize=(7.2, 4.2), dpi=100)
    try:
        for name, score in report.per_method.items():
            hours = np.arange(1, len(score.per_hour_rmse) + 1)
            ax.plot(hours, score.per_hour_rmse, marker="o", markersize=3.5,
                    label=f"{name} (overall {score.overall_rmse:.3f})",
                    color=METHOD_COLORS.get(name, "#888888"))
        ax.set_xlabel("hour of target day")
        ax.set_ylabel("RMSE (m/s)")
        ax.set_title(f"hourly RMSE averaged over {len(report.days_evaluated)} "
                     "day(s)")
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        try:
            fig.savefig(out_path, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise WriteError(f"cannot write {out_path}: {exc}") from exc
    finally:
        plt.close(fig)
