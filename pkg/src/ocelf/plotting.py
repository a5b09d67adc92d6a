"""Figure rendering for report outputs (matplotlib, file backend only)."""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.dates as mdates
import matplotlib.pyplot as plt


def plot_timeseries(
    series: Sequence[tuple[float, float | None]],
    path: str | Path,
    title: str = "",
    ylabel: str = "value",
) -> None:
    """Render a windowed feature series as a step plot PNG/SVG/PDF."""
    xs = [datetime.fromtimestamp(start, tz=timezone.utc) for start, _ in series]
    ys = [value for _, value in series]
    fig, ax = plt.subplots(figsize=(8, 3.2))
    ax.step(xs, ys, where="post", marker="o", markersize=3)
    ax.set_xlabel("window start (UTC)")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.xaxis.set_major_formatter(mdates.DateFormatter("%Y-%m-%d\n%H:%M"))
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
