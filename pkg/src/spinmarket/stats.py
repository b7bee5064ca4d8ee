"""Statistics toolkit: summary moments, histograms, autocorrelation, decay fits.

Conventions, fixed by the tests:

* moments use the population divisor n (not n-1),
* excess kurtosis is m4/m2**2 - 3 with mk the k-th central moment,
* the autocorrelation estimator uses one mean and one variance computed over
  the full series; the lag-tau covariance averages over the n - tau valid
  pairs and is divided by the variance, so C(0) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Series
from .errors import DataError


def _values(x) -> np.ndarray:
    v = x.values if isinstance(x, Series) else np.asarray(x, dtype=np.float64)
    return np.asarray(v, dtype=np.float64)


@dataclass
class SummaryStats:
    n: int
    mean: float
    variance: float  # population (divisor n)
    stdev: float
    excess_kurtosis: float  # NaN when variance is 0

    @property
    def degenerate(self) -> bool:
        """True when the sample has zero variance (standardization refused)."""
        return self.variance == 0.0


def summary(x) -> SummaryStats:
    """Population moments of a series; requires at least two samples."""
    v = _values(x)
    n = len(v)
    if n < 2:
        raise DataError(f"summary requires at least 2 samples, got {n}")
    mean = float(v.mean())
    centered = v - mean
    variance = float(centered @ centered) / n
    if variance == 0.0:
        return SummaryStats(n, mean, 0.0, 0.0, float("nan"))
    m4 = float(np.mean(centered**4))
    return SummaryStats(n, mean, variance, math.sqrt(variance), m4 / variance**2 - 3.0)


@dataclass
class Histogram:
    """Equal-width binned counts plus the metadata needed to re-plot.

    Bins are half-open [lo, hi) except the last, which is closed.  Samples
    outside [edges[0], edges[-1]] are not counted in any bin but remain in
    n_total; the difference is the overflow.
    """

    edges: np.ndarray
    counts: np.ndarray
    n_total: int
    standardized: bool
    mean_used: float
    stdev_used: float

    @property
    def overflow(self) -> int:
        return self.n_total - int(self.counts.sum())


def histogram(x, bins: int, value_range=None, standardize: bool = False) -> Histogram:
    """Bin a series into ``bins`` equal-width bins.

    With standardize=True the samples are first transformed to
    (x - mean)/stdev using population moments; mean_used/stdev_used record
    the transform.  value_range defaults to the (transformed) data extent.
    """
    v = _values(x)
    if len(v) == 0:
        raise DataError("cannot histogram an empty series")
    if bins < 1:
        raise DataError(f"bins must be >= 1, got {bins}")
    stats = summary(v) if len(v) >= 2 else SummaryStats(1, float(v[0]), 0.0, 0.0, float("nan"))
    if standardize:
        if stats.degenerate:
            raise DataError("cannot standardize a zero-variance series")
        v = (v - stats.mean) / stats.stdev
    if value_range is None:
        lo, hi = float(v.min()), float(v.max())
        if lo == hi:  # degenerate extent, mirror numpy's padding
            lo, hi = lo - 0.5, hi + 0.5
    else:
        lo, hi = float(value_range[0]), float(value_range[1])
        if not lo < hi:
            raise DataError(f"histogram range must satisfy lo < hi, got [{lo}, {hi}]")
    counts, edges = np.histogram(v, bins=bins, range=(lo, hi))
    return Histogram(
        edges=edges,
        counts=counts.astype(np.int64),
        n_total=len(v),
        standardized=standardize,
        mean_used=stats.mean,
        stdev_used=stats.stdev,
    )


def standard_normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def gaussian_reference(edges, n_total: int) -> np.ndarray:
    """Expected standard-normal counts per bin: n_total * (Phi(hi) - Phi(lo))."""
    e = np.asarray(edges, dtype=np.float64)
    if len(e) < 2 or np.any(np.diff(e) <= 0):
        raise DataError("edges must be strictly increasing with at least two entries")
    cdf = np.array([standard_normal_cdf(float(b)) for b in e])
    return n_total * np.diff(cdf)


def histogram_gaussian_reference(hist: Histogram) -> np.ndarray:
    """Expected counts under a Gaussian fitted to the histogram's sample.

    For a standardized histogram this is the standard-normal reference; for
    a raw one the recorded mean/stdev rescale the edges first.
    """
    if hist.standardized:
        return gaussian_reference(hist.edges, hist.n_total)
    if hist.stdev_used == 0.0:
        raise DataError("no Gaussian reference for a zero-variance sample")
    scaled = (hist.edges - hist.mean_used) / hist.stdev_used
    return gaussian_reference(scaled, hist.n_total)


def autocorrelation(x, max_lag: int) -> Series:
    """Normalized autocorrelation C(tau) for tau = 0..max_lag.

    C(tau) = (<x(t) x(t-tau)> - <x>**2) / var(x), with <x> and var(x) over
    the full series and <x(t) x(t-tau)> over the n - tau valid pairs.  No
    per-lag re-centering is applied.  C(0) = 1 by construction.
    """
    v = _values(x)
    n = len(v)
    if max_lag < 1:
        raise DataError(f"max_lag must be >= 1, got {max_lag}")
    if n <= max_lag + 1:
        raise DataError(f"series of length {n} is too short for max_lag {max_lag}")
    mu = float(v.mean())
    centered = v - mu
    variance = float(centered @ centered) / n
    if variance == 0.0:
        raise DataError("autocorrelation undefined for a zero-variance series")
    out = np.empty(max_lag + 1, dtype=np.float64)
    for tau in range(max_lag + 1):
        a = centered[tau:]
        b = centered[: n - tau]
        cov = (float(a @ b) + mu * (float(a.sum()) + float(b.sum()))) / (n - tau)
        out[tau] = cov / variance
    return Series(out, t0=0)


def abs_series(x) -> Series:
    """Elementwise absolute value (idempotent)."""
    if isinstance(x, Series):
        return Series(np.abs(x.values), t0=x.t0)
    return Series(np.abs(_values(x)), t0=0)


@dataclass
class DecayFit:
    """Straight-line fit of log C against tau (exponential) or log tau (power law).

    slope is the fitted line's slope: negative for decaying series.  For the
    exponential model the decay rate is -slope; for the power law the
    exponent is the slope itself.
    """

    model: str
    slope: float
    r_squared: float
    tau_min: int
    tau_max: int


def fit_decay(c: Series, model: str, fit_range: tuple[int, int]) -> DecayFit:
    """Least-squares decay fit of an autocorrelation table over a lag window.

    Every C(tau) inside fit_range must be strictly positive (log domain).
    """
    if model not in ("exponential", "power_law"):
        raise DataError(f"model must be 'exponential' or 'power_law', got {model!r}")
    tau_min, tau_max = int(fit_range[0]), int(fit_range[1])
    if tau_min > tau_max:
        raise DataError(f"fit_range must satisfy tau_min <= tau_max, got {fit_range}")
    lags = np.arange(tau_min, tau_max + 1)
    idx = lags - c.t0
    if idx[0] < 0 or idx[-1] >= len(c):
        raise DataError(
            f"fit_range {fit_range} outside available lags [{c.t0}, {c.t0 + len(c) - 1}]"
        )
    y = c.values[idx]
    if np.any(y <= 0):
        raise DataError("decay fit needs strictly positive values inside fit_range")
    if model == "power_law":
        if tau_min < 1:
            raise DataError("power-law fit requires tau_min >= 1")
        xs = np.log(lags.astype(np.float64))
    else:
        xs = lags.astype(np.float64)
    ys = np.log(y)
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 and ss_res == 0.0 else 1.0 - ss_res / ss_tot
    return DecayFit(model, float(slope), r_squared, tau_min, tau_max)
