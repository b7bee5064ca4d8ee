"""Vector-figure emission (SVG) from analysis artifacts.

Figures are self-contained SVG documents; the generating parameters are
embedded in the SVG metadata (Description), and every plotted point comes
straight from the backing tables, so the data-to-plot mapping is lossless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import DataError


def _save(fig, path, description: str) -> None:
    fig.savefig(
        path,
        format="svg",
        metadata={"Title": "spinmarket figure", "Description": description},
    )
    plt.close(fig)


def plot_return_traces(traces, path, description: str) -> None:
    """Stacked return-vs-time panels; traces is [(label, Series), ...]."""
    if not traces:
        raise DataError("no return series to plot")
    fig, axes = plt.subplots(
        len(traces), 1, figsize=(8, 1.9 * len(traces) + 1), sharex=True, squeeze=False
    )
    for ax, (label, series) in zip(axes[:, 0], traces):
        if len(series) == 0:
            raise DataError(f"empty return series for {label!r}")
        ax.plot(series.times(), series.values, lw=0.5, color="tab:blue")
        ax.set_ylabel("r(t)")
        ax.text(0.99, 0.92, label, transform=ax.transAxes, ha="right", va="top", fontsize=9)
    axes[-1, 0].set_xlabel("t")
    fig.suptitle("Log returns in time")
    fig.tight_layout()
    _save(fig, path, description)


def _draw_histogram_panel(ax, entries, standardized, decade_shifts, reference, title):
    for k, (label, edges, counts, expected) in enumerate(entries):
        counts = np.asarray(counts)
        if len(counts) == 0:
            raise DataError(f"empty histogram for {label!r}")
        centers = 0.5 * (np.asarray(edges[:-1]) + np.asarray(edges[1:]))
        factor = 10.0**k if decade_shifts else 1.0
        shown = counts.astype(float) * factor
        mask = shown > 0
        suffix = f" (x 1e{k})" if decade_shifts and k > 0 else ""
        ax.plot(centers[mask], shown[mask], marker="o", ms=3, lw=1, label=label + suffix)
        if reference and expected is not None:
            ref = np.asarray(expected, dtype=float) * factor
            refmask = ref > 0
            ax.plot(centers[refmask], ref[refmask], ls="--", lw=1, color="black", alpha=0.7)
    ax.set_yscale("log")
    ax.set_xlabel("r / sigma_r" if standardized else "r")
    ax.set_ylabel("count")
    ax.legend(fontsize=8)
    ax.set_title(title, fontsize=10)


def plot_histogram_panels(panels, path, description: str) -> None:
    """One SVG with one axes per panel.

    panels is [(title, standardized, decade_shifts, reference, entries)],
    entries is [(label, edges, counts, expected_or_None), ...].  Decade
    shifts multiply the k-th curve by 10**k (presentation only; the backing
    tables keep raw counts).  The Gaussian reference is drawn dashed.
    """
    if not panels:
        raise DataError("no histogram panels to plot")
    fig, axes = plt.subplots(1, len(panels), figsize=(6 * len(panels), 5), squeeze=False)
    for ax, (title, standardized, decade_shifts, reference, entries) in zip(
        axes[0], panels
    ):
        if not entries:
            raise DataError(f"no histograms for panel {title!r}")
        _draw_histogram_panel(ax, entries, standardized, decade_shifts, reference, title)
    fig.tight_layout()
    _save(fig, path, description)


def plot_histograms(
    entries,
    path,
    description: str,
    standardized: bool,
    decade_shifts: bool = False,
    reference: bool = True,
) -> None:
    """Single-panel histogram overlay (see plot_histogram_panels)."""
    title = "Histogram of returns"
    if standardized:
        title += " (standardized)"
    if reference:
        title += ", Gaussian dashed"
    plot_histogram_panels(
        [(title, standardized, decade_shifts, reference, entries)], path, description
    )


def plot_autocorrelation(c_r, c_abs_r, path, description: str) -> None:
    """Three-panel autocorrelation view: linear, semi-log, log-log."""
    if len(c_r) == 0 or len(c_abs_r) == 0:
        raise DataError("empty autocorrelation table")
    lags = np.arange(len(c_r))
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))

    ax = axes[0]
    ax.plot(lags, c_r.values, lw=1, label="returns")
    ax.plot(lags, c_abs_r.values, lw=1, label="|returns|")
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("lag")
    ax.set_ylabel("C(lag)")
    ax.set_title("linear")
    ax.legend(fontsize=8)

    ax = axes[1]
    pos = c_abs_r.values[1:] > 0
    ax.semilogy(lags[1:][pos], c_abs_r.values[1:][pos], marker="o", ms=3, lw=1)
    ax.set_xlabel("lag")
    ax.set_title("|returns|, semi-log")

    ax = axes[2]
    ax.loglog(lags[1:][pos], c_abs_r.values[1:][pos], marker="o", ms=3, lw=1)
    ax.set_xlabel("lag")
    ax.set_title("|returns|, log-log")

    fig.suptitle("Autocorrelation of returns and absolute returns")
    fig.tight_layout()
    _save(fig, path, description)


def plot_abs_autocorrelation_with_inset(c_abs_r, path, description: str) -> None:
    """Log-log absolute-return autocorrelation with a semi-log inset."""
    if len(c_abs_r) == 0:
        raise DataError("empty autocorrelation table")
    lags = np.arange(len(c_abs_r))
    pos = c_abs_r.values[1:] > 0
    xs, ys = lags[1:][pos], c_abs_r.values[1:][pos]
    if xs.size == 0:
        raise DataError("no positive autocorrelation values to plot")

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.loglog(xs, ys, marker="o", ms=3, lw=1)
    ax.set_xlabel("lag")
    ax.set_ylabel("C(lag)")
    ax.set_title("Absolute-return autocorrelation (log-log; inset semi-log)")

    inset = ax.inset_axes([0.12, 0.12, 0.38, 0.38])
    inset.semilogy(xs, ys, lw=1)
    inset.tick_params(labelsize=7)

    fig.tight_layout()
    _save(fig, path, description)
