"""
SVG figures: distance histograms with a normal overlay, and distance
against size scatter plots with the fitted line.

Figures are written with a fixed SVG hash salt and no date so the same
data always gives the same bytes.
"""

from typing import Iterable, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from scipy import stats

from .experiments import FitResult, Histogram, Mode, PairRecord, fit_points, linear_fit

_SVG_METADATA = {"Date": None}


def _save_svg(fig: plt.Figure, output_path) -> None:
    with matplotlib.rc_context({"svg.hashsalt": "rrdist", "svg.fonttype": "none"}):
        fig.savefig(output_path, format="svg", metadata=_SVG_METADATA, bbox_inches="tight")
    plt.close(fig)


def render_histogram_svg(h: Histogram, output_path, title: Optional[str] = None) -> None:
    """
    Bar chart of a histogram with the normal density of the same mean and sd.

    Args:
        h: Histogram to draw
        output_path: Where to save the SVG
        title: Figure title, defaults to the target size
    """
    fig, ax = plt.subplots(figsize=(8, 5))
    lows = np.fromiter(h.bins.keys(), dtype=float)
    counts = np.fromiter(h.bins.values(), dtype=float)
    ax.bar(lows, counts, width=h.bin_width, align="edge", color="0.6", edgecolor="0.3")

    if h.sample_sd > 0:
        xs = np.linspace(lows.min(), lows.max() + h.bin_width, 400)
        # scale the density to expected counts per bin
        pdf = stats.norm.pdf(xs, loc=h.sample_mean, scale=h.sample_sd)
        ax.plot(xs, pdf * h.sample_count * h.bin_width, "k-", linewidth=1.5)

    ax.set_xlabel("Restricted rotation distance")
    ax.set_ylabel("Pairs")
    ax.set_title(
        title
        or f"Reduced size {h.target_reduced_size}: mean {h.sample_mean:.1f}, "
        f"sd {h.sample_sd:.2f}, {h.sample_count} pairs"
    )
    _save_svg(fig, output_path)


def render_scatter_svg(
    records: Iterable[PairRecord],
    output_path,
    mode: Union[Mode, str] = Mode.REDUCED,
    fit: Optional[FitResult] = None,
) -> FitResult:
    """
    Distance against raw or reduced size, with the least-squares line.

    Returns:
        FitResult: The line drawn (fitted from the records unless given)
    """
    mode = Mode.parse(mode)
    points: Sequence = fit_points(records, mode)
    fit = fit or linear_fit(points)
    pts = np.asarray(points, dtype=float)

    fig, ax = plt.subplots(figsize=(8, 5))
    ax.scatter(pts[:, 0], pts[:, 1], s=2, c="0.4", linewidths=0)
    xs = np.array([pts[:, 0].min(), pts[:, 0].max()])
    ax.plot(xs, fit.predict(xs), "r-", linewidth=1)
    ax.set_xlabel("Reduced size" if mode is Mode.REDUCED else "Generated size")
    ax.set_ylabel("Restricted rotation distance")
    ax.set_title(f"d = {fit.slope:.5f} n {fit.intercept:+.4f}")
    _save_svg(fig, output_path)
    return fit
