"""Price and logarithmic-return series derived from magnetization.

The price is p0 * exp(M(t)) with a constant fundamental price p0, so the
log return over lag tau is exactly M(t) - M(t - tau); returns are computed
from magnetization differences directly (p0 cancels, no exponentials).
price_series exists for export and plotting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Series
from .errors import ConfigurationError, DataError


@dataclass
class PriceParams:
    """Fundamental price constant."""

    p0: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.p0) and self.p0 > 0):
            raise ConfigurationError(f"p0 must be finite and > 0, got {self.p0!r}")


def price_series(m: Series, params: PriceParams | None = None) -> Series:
    """P(t) = p0 * exp(M(t)) elementwise; output in [p0/e, p0*e]."""
    if params is None:
        params = PriceParams()
    if len(m) == 0:
        raise DataError("cannot price an empty magnetization series")
    v = m.values
    if np.any(np.abs(v) > 1.0):
        raise DataError("magnetization samples must lie in [-1, 1]")
    return Series(params.p0 * np.exp(v), t0=m.t0)


def log_returns(m: Series, tau: int) -> Series:
    """r_tau(t) = M(t) - M(t - tau), for t = t0 + tau .. end.

    Output length is len(m) - tau; every sample lies in [-2, 2] because
    |M| <= 1.
    """
    if not isinstance(tau, int) or tau < 1:
        raise ConfigurationError(f"tau must be an integer >= 1, got {tau!r}")
    if tau >= len(m):
        raise DataError(f"tau={tau} requires a series longer than {tau}, got {len(m)}")
    v = m.values
    return Series(v[tau:] - v[:-tau], t0=m.t0 + tau)
