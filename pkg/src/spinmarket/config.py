"""Experiment configuration: defaults, config files, flag precedence.

A config file is flat structured text mirroring the CLI flags, one
``key = value`` per line ('#' starts a comment).  Flags override file
values; defaults fill the rest.  Unknown keys are errors, not warnings.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field
from pathlib import Path

from .core import ModelParams
from .errors import ConfigurationError
from .pricing import PriceParams

ARTIFACT_KINDS = ("series", "histogram", "autocorrelation", "figures")

DEFAULTS = {
    "lattice-size": 32,
    "coupling": 1.0,
    "sigma": 1.0,
    "lambda": 0.0,
    "threshold-mode": "frozen",
    "thermalization": 5000,
    "steps": 50000,
    "seed": None,  # resolved from system entropy when left unset
    "tau": (1, 16),
    "max-lag": 200,
    "bins": 101,
    "p0": 1.0,
    "out": "out",
    "format": "csv",
    "outputs": ARTIFACT_KINDS,
}


def _parse_int(key, raw, minimum):
    try:
        v = int(str(raw).strip())
    except ValueError:
        raise ConfigurationError(f"{key} must be an integer, got {raw!r}") from None
    if v < minimum:
        raise ConfigurationError(f"{key} must be >= {minimum}, got {v}")
    return v


def _parse_float(key, raw):
    try:
        return float(str(raw).strip())
    except ValueError:
        raise ConfigurationError(f"{key} must be a number, got {raw!r}") from None


def _parse_taus(raw):
    if isinstance(raw, (list, tuple)):
        items = list(raw)
    else:
        items = [s for s in str(raw).split(",") if s.strip()]
    if not items:
        raise ConfigurationError("tau list must not be empty")
    return tuple(_parse_int("tau", item, 1) for item in items)


def _parse_outputs(raw):
    if isinstance(raw, (list, tuple)):
        items = [str(s) for s in raw]
    else:
        items = [s.strip() for s in str(raw).split(",") if s.strip()]
    for item in items:
        if item not in ARTIFACT_KINDS:
            raise ConfigurationError(
                f"outputs entries must be among {ARTIFACT_KINDS}, got {item!r}"
            )
    if not items:
        raise ConfigurationError("outputs list must not be empty")
    return tuple(items)


@dataclass
class ExperimentConfig:
    """Everything one experiment needs: model, pricing, analysis, outputs."""

    model: ModelParams
    price: PriceParams = field(default_factory=PriceParams)
    taus: tuple[int, ...] = (1, 16)
    max_lag: int = 200
    bins: int = 101
    outputs: tuple[str, ...] = ARTIFACT_KINDS
    output_dir: Path = Path("out")
    fmt: str = "csv"

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        if not self.taus:
            raise ConfigurationError("tau list must not be empty")
        for tau in self.taus:
            if tau >= self.model.measurement_steps:
                raise ConfigurationError(
                    f"tau={tau} must be smaller than steps={self.model.measurement_steps}"
                )
        if self.max_lag < 1:
            raise ConfigurationError(f"max-lag must be >= 1, got {self.max_lag}")
        if self.bins < 1:
            raise ConfigurationError(f"bins must be >= 1, got {self.bins}")
        if self.fmt != "csv":
            raise ConfigurationError(f"format must be 'csv', got {self.fmt!r}")

    def snapshot(self) -> dict:
        """Flat key/value view mirroring the config-file keys (reproducible)."""
        m = self.model
        return {
            "lattice-size": str(m.side),
            "coupling": repr(m.coupling),
            "sigma": repr(m.sigma),
            "lambda": repr(m.lam),
            "threshold-mode": m.threshold_mode,
            "thermalization": str(m.thermalization_steps),
            "steps": str(m.measurement_steps),
            "seed": str(m.seed),
            "tau": ",".join(str(t) for t in self.taus),
            "max-lag": str(self.max_lag),
            "bins": str(self.bins),
            "p0": repr(self.price.p0),
            "out": str(self.output_dir),
            "format": self.fmt,
            "outputs": ",".join(self.outputs),
        }


def read_config_file(path) -> dict:
    """Parse a flat key = value file into a raw-string mapping."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    raw: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        sep = "=" if "=" in stripped else (":" if ":" in stripped else None)
        if sep is None:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in stripped.split(sep, 1))
        key = key.replace("_", "-")
        if key not in DEFAULTS:
            raise ConfigurationError(
                f"{path}:{lineno}: unknown key {key!r}; known keys: "
                + ", ".join(sorted(DEFAULTS))
            )
        if key in raw:
            raise ConfigurationError(f"{path}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


def parse_config(flag_values: dict, config_file=None) -> ExperimentConfig:
    """Merge defaults, an optional config file, and flag overrides.

    flag_values maps config keys (flag spelling, e.g. 'lattice-size') to
    already-typed or raw values; None entries mean "flag not given".  A seed
    left unset everywhere is drawn from system entropy so it can still be
    recorded.
    """
    for key in flag_values:
        if key not in DEFAULTS:
            raise ConfigurationError(f"unknown option {key!r}")

    merged = dict(DEFAULTS)
    if config_file is not None:
        merged.update(read_config_file(config_file))
    merged.update({k: v for k, v in flag_values.items() if v is not None})

    seed = merged["seed"]
    if seed is None:
        seed = secrets.randbits(64)
    model = ModelParams(
        coupling=_parse_float("coupling", merged["coupling"]),
        sigma=_parse_float("sigma", merged["sigma"]),
        lam=_parse_float("lambda", merged["lambda"]),
        side=_parse_int("lattice-size", merged["lattice-size"], 2),
        thermalization_steps=_parse_int("thermalization", merged["thermalization"], 0),
        measurement_steps=_parse_int("steps", merged["steps"], 1),
        seed=_parse_int("seed", seed, 0),
        threshold_mode=str(merged["threshold-mode"]).strip(),
    )
    return ExperimentConfig(
        model=model,
        price=PriceParams(p0=_parse_float("p0", merged["p0"])),
        taus=_parse_taus(merged["tau"]),
        max_lag=_parse_int("max-lag", merged["max-lag"], 1),
        bins=_parse_int("bins", merged["bins"], 1),
        outputs=_parse_outputs(merged["outputs"]),
        output_dir=Path(str(merged["out"])),
        fmt=str(merged["format"]).strip(),
    )
