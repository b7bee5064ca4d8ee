"""spinmarket: a three-state spin lattice market simulator.

Agents on a periodic square lattice buy (+1), sell (-1), or stay inactive
(0); imitation of nearest neighbors competes with individual noise, and a
trading threshold proportional to the absolute magnetization throttles
activity when the market runs far from its fundamental value.  Prices are
p0 * exp(M(t)), so log returns are magnetization differences.  The package
bundles the simulation core (compiled kernel with a pure-Python fallback),
a statistics toolkit for the resulting return series, and a CLI that
reproduces the reference figures.
"""

__version__ = "0.1.0"

from .backend import BACKEND, available_backends, get_kernel
from .config import ExperimentConfig, parse_config
from .core import (
    ModelParams,
    Series,
    SimulationResult,
    SpinLattice,
    apply_updates,
    local_field,
    magnetization,
    run_simulation,
    simulate,
    step,
    threshold_sign,
    update_site,
)
from .errors import ConfigurationError, DataError, SpinMarketError
from .pricing import PriceParams, log_returns, price_series
from .rng import RandomStream
from .stats import (
    DecayFit,
    Histogram,
    SummaryStats,
    abs_series,
    autocorrelation,
    fit_decay,
    gaussian_reference,
    histogram,
    histogram_gaussian_reference,
    summary,
)

__all__ = [
    "BACKEND",
    "ConfigurationError",
    "DataError",
    "DecayFit",
    "ExperimentConfig",
    "Histogram",
    "ModelParams",
    "PriceParams",
    "RandomStream",
    "Series",
    "SimulationResult",
    "SpinLattice",
    "SpinMarketError",
    "SummaryStats",
    "__version__",
    "abs_series",
    "apply_updates",
    "autocorrelation",
    "available_backends",
    "fit_decay",
    "gaussian_reference",
    "get_kernel",
    "histogram",
    "histogram_gaussian_reference",
    "local_field",
    "log_returns",
    "magnetization",
    "parse_config",
    "price_series",
    "run_simulation",
    "simulate",
    "step",
    "summary",
    "threshold_sign",
    "update_site",
]
