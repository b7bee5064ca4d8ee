"""Lattice state and the threshold update dynamics.

Agents sit on an L x L periodic square lattice, each holding a three-state
spin: +1 (buy), -1 (sell), 0 (inactive).  A randomly chosen agent adopts

    sign_q( J * (sum of its four nearest-neighbor spins) + sigma * noise )

where sign_q is a signum with dead zone (-q, q) and the threshold
q = lambda * |M| scales with the current absolute magnetization M (mean
spin).  One time step performs N = L*L such single-site updates; the
magnetization series M(t), sampled once per step, is the module's output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import backend
from .errors import ConfigurationError
from .rng import RandomStream

THRESHOLD_MODES = ("frozen", "live")


def threshold_sign(x: float, q: float) -> int:
    """Signum with a dead zone: +1 if x > q, -1 if x < -q, else 0.

    Ties x = +-q map to 0 (inactive), so sign_0(0) = 0 and the function
    stays odd.  With q = 0 this is the ordinary signum.
    """
    if q < 0:
        raise ValueError(f"threshold q must be >= 0, got {q}")
    if x > q:
        return 1
    if x < -q:
        return -1
    return 0


@dataclass
class ModelParams:
    """Full definition of one simulation experiment."""

    coupling: float = 1.0  # J, nearest-neighbor interaction strength
    sigma: float = 1.0  # individual-opinion noise strength
    lam: float = 0.0  # threshold coefficient (q = lam * |M|)
    side: int = 32  # lattice is side x side
    thermalization_steps: int = 5000
    measurement_steps: int = 50000
    seed: int = 0
    threshold_mode: str = "frozen"  # "frozen": q fixed per step; "live": tracks every update

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.side, int) or self.side < 2:
            raise ConfigurationError(f"side must be an integer >= 2, got {self.side!r}")
        if not np.isfinite(self.coupling):
            raise ConfigurationError(f"coupling must be finite, got {self.coupling!r}")
        if not (np.isfinite(self.sigma) and self.sigma >= 0):
            raise ConfigurationError(f"sigma must be finite and >= 0, got {self.sigma!r}")
        if not (np.isfinite(self.lam) and self.lam >= 0):
            raise ConfigurationError(f"lambda must be finite and >= 0, got {self.lam!r}")
        if not isinstance(self.thermalization_steps, int) or self.thermalization_steps < 0:
            raise ConfigurationError(
                f"thermalization must be an integer >= 0, got {self.thermalization_steps!r}"
            )
        if not isinstance(self.measurement_steps, int) or self.measurement_steps < 1:
            raise ConfigurationError(
                f"steps must be an integer >= 1, got {self.measurement_steps!r}"
            )
        if not isinstance(self.seed, int) or not (0 <= self.seed < 1 << 64):
            raise ConfigurationError(
                f"seed must be an unsigned 64-bit integer, got {self.seed!r}"
            )
        if self.threshold_mode not in THRESHOLD_MODES:
            raise ConfigurationError(
                f"threshold-mode must be one of {THRESHOLD_MODES}, got {self.threshold_mode!r}"
            )

    @property
    def n_sites(self) -> int:
        return self.side * self.side


@dataclass
class Series:
    """Ordered real samples with a time-step index origin."""

    values: np.ndarray
    t0: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1:
            raise ValueError("Series values must be one-dimensional")

    def __len__(self) -> int:
        return len(self.values)

    def times(self) -> np.ndarray:
        return self.t0 + np.arange(len(self.values))


class SpinLattice:
    """L x L grid of three-state spins with a cached spin sum.

    Neighborhood is the 4-nearest (von Neumann) stencil with periodic
    wraparound on both axes.  Cells are stored flat in row-major order.
    """

    __slots__ = ("side", "cells", "spin_sum", "zero_count")

    def __init__(self, side: int, cells: np.ndarray | None = None):
        if side < 2:
            raise ConfigurationError(f"side must be >= 2, got {side}")
        self.side = side
        n = side * side
        if cells is None:
            cells = np.zeros(n, dtype=np.int8)
        else:
            cells = np.asarray(cells, dtype=np.int8).reshape(n).copy()
            bad = ~np.isin(cells, (-1, 0, 1))
            if bad.any():
                raise ValueError(f"cells must hold only -1, 0, +1; found {cells[bad][0]}")
        self.cells = cells
        self.spin_sum = int(cells.sum())
        self.zero_count = int((cells == 0).sum())

    @classmethod
    def random(cls, side: int, rng: RandomStream) -> "SpinLattice":
        """Uniform i.i.d. initial configuration over {-1, 0, +1}."""
        n = side * side
        cells = np.empty(n, dtype=np.int8)
        for i in range(n):
            cells[i] = rng.uniform_index(3) - 1
        return cls(side, cells)

    @classmethod
    def filled(cls, side: int, value: int) -> "SpinLattice":
        if value not in (-1, 0, 1):
            raise ValueError(f"spin value must be -1, 0, or +1, got {value}")
        return cls(side, np.full(side * side, value, dtype=np.int8))

    @property
    def n_sites(self) -> int:
        return self.side * self.side

    def neighbor_sum(self, i: int) -> int:
        """Sum of the four periodic nearest-neighbor spins of site i."""
        n, side = self.n_sites, self.side
        if not 0 <= i < n:
            raise IndexError(f"site index {i} out of range [0, {n})")
        row, col = divmod(i, side)
        c = self.cells
        upper = c[n - side + col] if row == 0 else c[i - side]
        lower = c[col] if row == side - 1 else c[i + side]
        left = c[i + side - 1] if col == 0 else c[i - 1]
        right = c[i - side + 1] if col == side - 1 else c[i + 1]
        return int(upper) + int(lower) + int(left) + int(right)

    def recompute_spin_sum(self) -> int:
        """Ground truth for the cached spin_sum (full O(N) recomputation)."""
        return int(self.cells.sum())

    def magnetization(self) -> float:
        assert self.spin_sum == self.recompute_spin_sum()
        return self.spin_sum / self.n_sites

    def set_spin(self, i: int, value: int) -> None:
        """Write one spin, maintaining the cached sums incrementally."""
        old = int(self.cells[i])
        self.cells[i] = value
        self.spin_sum += value - old
        self.zero_count += (value == 0) - (old == 0)

    def copy(self) -> "SpinLattice":
        return SpinLattice(self.side, self.cells)


def magnetization(lattice: SpinLattice) -> float:
    """Mean spin over all sites, in [-1, 1]."""
    return lattice.magnetization()


def local_field(lattice: SpinLattice, i: int, coupling: float) -> float:
    """coupling * (sum of the four periodic nearest-neighbor spins of i)."""
    return coupling * lattice.neighbor_sum(i)


def update_site(
    lattice: SpinLattice,
    i: int,
    params: ModelParams,
    threshold_q: float,
    noise: float,
) -> int:
    """Apply the update rule to site i with an explicit noise draw.

    The new spin is threshold_sign(local_field + sigma*noise, threshold_q);
    it is written into the lattice and returned.  Keeping the noise a caller
    argument makes the operation deterministic and directly testable.
    """
    x = local_field(lattice, i, params.coupling) + params.sigma * noise
    new = threshold_sign(x, threshold_q)
    lattice.set_spin(i, new)
    return new


def apply_updates(lattice: SpinLattice, params: ModelParams, moves) -> float:
    """Test hook: apply an explicit (site, noise) sequence.

    Thresholds follow params.threshold_mode exactly as in step(): frozen
    uses the magnetization at entry for the whole sequence, live tracks
    every spin change.  Returns the final magnetization.
    """
    n = lattice.n_sites
    if params.threshold_mode == "frozen":
        q = params.lam * abs(lattice.spin_sum / n)
    for i, noise in moves:
        if params.threshold_mode == "live":
            q = params.lam * abs(lattice.spin_sum / n)
        update_site(lattice, i, params, q, noise)
    return lattice.spin_sum / n


def _step_with_stream(lattice: SpinLattice, params: ModelParams, rng) -> float:
    """Reference implementation of one time step, draw by draw.

    Used for scripted random streams in tests and as the oracle the batch
    kernels are checked against.  Draw order per update: site index first,
    then one normal.
    """
    n = lattice.n_sites
    frozen = params.threshold_mode == "frozen"
    if frozen:
        q = params.lam * abs(lattice.spin_sum / n)
    for _ in range(n):
        i = rng.uniform_index(n)
        noise = rng.normal()
        if not frozen:
            q = params.lam * abs(lattice.spin_sum / n)
        update_site(lattice, i, params, q, noise)
    return lattice.spin_sum / n


def step(lattice: SpinLattice, params: ModelParams, rng, kernel=None) -> float:
    """One time step: n_sites random single-site updates; returns M after.

    With a RandomStream this dispatches to the selected batch kernel; any
    other object exposing uniform_index/normal runs through the pure
    reference path (test hook).
    """
    if not isinstance(rng, RandomStream):
        return _step_with_stream(lattice, params, rng)
    kern = kernel if kernel is not None else backend.get_kernel()
    state = rng.state_array()
    m_out = np.empty(1, dtype=np.float64)
    lattice.spin_sum, lattice.zero_count = kern.run_steps(
        lattice.cells,
        lattice.side,
        lattice.spin_sum,
        lattice.zero_count,
        params.coupling,
        params.sigma,
        params.lam,
        params.threshold_mode == "frozen",
        1,
        state,
        m_out,
        None,
    )
    rng.set_state_array(state)
    return float(m_out[0])


@dataclass
class SimulationResult:
    """Everything one run produces beyond the bare magnetization series."""

    magnetization: Series
    zero_counts: np.ndarray  # inactive-site count after each measured step
    params: ModelParams
    final_lattice: SpinLattice = field(repr=False)
    backend: str = ""


def simulate(
    params: ModelParams,
    initial: np.ndarray | SpinLattice | None = None,
    kernel=None,
) -> SimulationResult:
    """Run thermalization + measurement and record M(t) once per step.

    Spins start uniformly at random over {-1, 0, +1} from the seed unless
    ``initial`` is given (test hook).  Runs are bit-identical for identical
    params on a given build, regardless of backend.
    """
    params.validate()
    kern = kernel if kernel is not None else backend.get_kernel()
    rng = RandomStream(params.seed)

    if initial is None:
        lattice = SpinLattice.random(params.side, rng)
    elif isinstance(initial, SpinLattice):
        if initial.side != params.side:
            raise ConfigurationError(
                f"initial lattice side {initial.side} != params side {params.side}"
            )
        lattice = initial.copy()
    else:
        lattice = SpinLattice(params.side, initial)

    state = rng.state_array()
    frozen = params.threshold_mode == "frozen"
    args = (params.coupling, params.sigma, params.lam, frozen)

    if params.thermalization_steps > 0:
        lattice.spin_sum, lattice.zero_count = kern.run_steps(
            lattice.cells, lattice.side, lattice.spin_sum, lattice.zero_count,
            *args, params.thermalization_steps, state, None, None,
        )

    m_out = np.empty(params.measurement_steps, dtype=np.float64)
    zeros_out = np.empty(params.measurement_steps, dtype=np.int64)
    lattice.spin_sum, lattice.zero_count = kern.run_steps(
        lattice.cells, lattice.side, lattice.spin_sum, lattice.zero_count,
        *args, params.measurement_steps, state, m_out, zeros_out,
    )
    rng.set_state_array(state)

    series = Series(m_out, t0=params.thermalization_steps)
    return SimulationResult(series, zeros_out, params, lattice, kern.NAME)


def run_simulation(
    params: ModelParams,
    initial: np.ndarray | SpinLattice | None = None,
) -> Series:
    """Magnetization series M(t) of one full run (see simulate)."""
    return simulate(params, initial=initial).magnetization
