"""Command-line interface: simulate, analyze, plot, reproduce.

Exit codes: 0 success, 1 configuration error (bad flags, bad config file,
invalid parameters), 2 runtime/data error (missing or malformed files,
degenerate series, unwritable output directory).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .config import ExperimentConfig, parse_config
from .core import simulate
from .errors import ConfigurationError, DataError
from .pricing import log_returns, price_series
from .recipes import RECIPES, run_recipes
from .seriesio import (
    RunRecord,
    read_autocorr_csv,
    read_histogram_csv,
    read_series_csv,
    write_autocorr_csv,
    write_histogram_csv,
    write_run_record,
    write_series_csv,
)
from .stats import (
    abs_series,
    autocorrelation,
    fit_decay,
    histogram,
    histogram_gaussian_reference,
    summary,
)
from . import plotting


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigurationError(message)


def _add_model_flags(p: _Parser) -> None:
    p.add_argument("--config", metavar="FILE", help="flat key = value config file")
    p.add_argument("--lattice-size", type=int, metavar="L", help="lattice side (default 32)")
    p.add_argument("--coupling", type=float, metavar="J", help="neighbor coupling (default 1)")
    p.add_argument("--sigma", type=float, help="individual-opinion noise strength (default 1)")
    p.add_argument("--lambda", dest="lam", type=float, help="threshold coefficient (default 0)")
    p.add_argument("--threshold-mode", choices=("frozen", "live"),
                   help="threshold timing within a step (default frozen)")
    p.add_argument("--thermalization", type=int, metavar="STEPS",
                   help="discarded warm-up steps (default 5000)")
    p.add_argument("--steps", type=int, help="measured steps (default 50000)")
    p.add_argument("--seed", type=int, help="64-bit seed (default: system entropy, recorded)")
    p.add_argument("--tau", type=int, action="append", metavar="TAU",
                   help="return lag, repeatable (default 1 16)")
    p.add_argument("--max-lag", type=int, help="autocorrelation lag limit (default 200)")
    p.add_argument("--bins", type=int, help="histogram bins (default 101)")
    p.add_argument("--p0", type=float, help="fundamental price constant (default 1)")
    p.add_argument("--out", metavar="DIR", help="output directory (default ./out)")
    p.add_argument("--format", choices=("csv",), help="data format (csv)")


_FLAG_KEYS = {
    "lattice_size": "lattice-size",
    "coupling": "coupling",
    "sigma": "sigma",
    "lam": "lambda",
    "threshold_mode": "threshold-mode",
    "thermalization": "thermalization",
    "steps": "steps",
    "seed": "seed",
    "tau": "tau",
    "max_lag": "max-lag",
    "bins": "bins",
    "p0": "p0",
    "out": "out",
    "format": "format",
}


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    flags = {}
    for attr, key in _FLAG_KEYS.items():
        value = getattr(args, attr, None)
        if value is not None:
            flags[key] = value
    return parse_config(flags, config_file=getattr(args, "config", None))


def _ensure_outdir(cfg: ExperimentConfig) -> Path:
    try:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataError(f"cannot create output directory {cfg.output_dir}: {exc}") from exc
    return cfg.output_dir


def cmd_simulate(cfg: ExperimentConfig) -> RunRecord:
    """Run one simulation and write its series CSVs plus the run record."""
    out = _ensure_outdir(cfg)
    started = time.perf_counter()
    result = simulate(cfg.model)
    record = RunRecord(
        config=cfg.snapshot(),
        software_version=__version__,
        backend=result.backend,
        duration_seconds=0.0,
    )
    if "series" in cfg.outputs:
        m_path = out / "magnetization.csv"
        write_series_csv(m_path, result.magnetization)
        record.add_file(m_path)
        p_path = out / "price.csv"
        write_series_csv(p_path, price_series(result.magnetization, cfg.price))
        record.add_file(p_path)
        for tau in cfg.taus:
            r_path = out / f"returns_tau{tau}.csv"
            write_series_csv(r_path, log_returns(result.magnetization, tau))
            record.add_file(r_path)
    record.duration_seconds = time.perf_counter() - started
    write_run_record(out / "run_record.txt", record)
    for name in sorted(record.checksums):
        print(f"wrote {out / name}")
    print(f"wrote {out / 'run_record.txt'} (seed {cfg.model.seed}, backend {record.backend})")
    return record


def cmd_analyze(cfg: ExperimentConfig, magnetization=None) -> list[Path]:
    """Derive statistics artifacts from a magnetization series.

    Reads <out>/magnetization.csv unless an in-memory series is supplied.
    Emits per-tau standardized histograms (with a Gaussian reference
    column), the lag-1 return/absolute-return autocorrelation table, decay
    fits, and per-tau summary statistics.
    """
    out = _ensure_outdir(cfg)
    if magnetization is None:
        magnetization = read_series_csv(out / "magnetization.csv")
    written: list[Path] = []

    stats_rows = []
    for tau in cfg.taus:
        r = log_returns(magnetization, tau)
        s = summary(r)
        stats_rows.append((tau, s))
        if s.degenerate:
            raise DataError(f"returns at tau={tau} have zero variance; nothing to analyze")
        if "histogram" in cfg.outputs:
            hist = histogram(r, bins=cfg.bins, value_range=(-5.0, 5.0), standardize=True)
            path = out / f"histogram_tau{tau}.csv"
            write_histogram_csv(path, hist, histogram_gaussian_reference(hist))
            written.append(path)

    if "autocorrelation" in cfg.outputs:
        r1 = log_returns(magnetization, 1)
        c_r = autocorrelation(r1, cfg.max_lag)
        c_abs = autocorrelation(abs_series(r1), cfg.max_lag)
        path = out / "autocorrelation.csv"
        write_autocorr_csv(path, c_r, c_abs)
        written.append(path)

        fit_hi = min(50, cfg.max_lag)
        fits = []
        for model in ("exponential", "power_law"):
            try:
                fits.append(fit_decay(c_abs, model, (1, fit_hi)))
            except DataError as exc:
                print(f"note: {model} fit skipped: {exc}", file=sys.stderr)
        if fits:
            path = out / "decay_fits.csv"
            with path.open("w", newline="") as fh:
                fh.write("series,model,tau_min,tau_max,slope,r_squared\n")
                for f in fits:
                    fh.write(
                        f"c_abs_r,{f.model},{f.tau_min},{f.tau_max},"
                        f"{f.slope!r},{f.r_squared!r}\n"
                    )
            written.append(path)

    path = out / "summary_stats.csv"
    with path.open("w", newline="") as fh:
        fh.write("tau,n,mean,variance,stdev,excess_kurtosis\n")
        for tau, s in stats_rows:
            fh.write(
                f"{tau},{s.n},{s.mean!r},{s.variance!r},{s.stdev!r},{s.excess_kurtosis!r}\n"
            )
    written.append(path)

    for p in written:
        print(f"wrote {p}")
    return written


def cmd_plot(cfg: ExperimentConfig) -> list[Path]:
    """Render SVG figures from the artifacts in the output directory."""
    out = _ensure_outdir(cfg)
    written: list[Path] = []
    note = "; ".join(f"{k}={v}" for k, v in sorted(cfg.snapshot().items()))

    trace_path = out / f"returns_tau{cfg.taus[0]}.csv"
    if not trace_path.exists():
        raise DataError(f"missing artifact {trace_path}; run `simulate` first")
    r = read_series_csv(trace_path)
    path = out / "returns_trace.svg"
    plotting.plot_return_traces([(f"tau={cfg.taus[0]}", r)], path, note)
    written.append(path)

    entries = []
    for tau in cfg.taus:
        h_path = out / f"histogram_tau{tau}.csv"
        if not h_path.exists():
            raise DataError(f"missing artifact {h_path}; run `analyze` first")
        edges, counts, expected = read_histogram_csv(h_path)
        entries.append((f"tau={tau}", edges, counts, expected))
    path = out / "histograms.svg"
    plotting.plot_histograms(
        entries, path, note, standardized=True, decade_shifts=len(entries) > 1
    )
    written.append(path)

    ac_path = out / "autocorrelation.csv"
    if not ac_path.exists():
        raise DataError(f"missing artifact {ac_path}; run `analyze` first")
    c_r, c_abs = read_autocorr_csv(ac_path)
    path = out / "autocorrelation.svg"
    plotting.plot_autocorrelation(c_r, c_abs, path, note)
    written.append(path)

    for p in written:
        print(f"wrote {p}")
    return written


def build_parser() -> _Parser:
    parser = _Parser(prog="spinmarket", description=__doc__)
    parser.add_argument("--version", action="version", version=f"spinmarket {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a simulation and write series CSVs")
    _add_model_flags(p_sim)

    p_ana = sub.add_parser("analyze", help="derive histograms, autocorrelation, fits")
    _add_model_flags(p_ana)

    p_plot = sub.add_parser("plot", help="render SVG figures from artifacts")
    _add_model_flags(p_plot)

    p_rep = sub.add_parser("reproduce", help="run a named figure recipe end-to-end")
    p_rep.add_argument("figure", nargs="+", choices=sorted(RECIPES) + ["all"],
                       metavar="FIGURE", help=f"one or more of {', '.join(sorted(RECIPES))}, or all")
    p_rep.add_argument("--out", metavar="DIR", help="output root (default ./out)")
    p_rep.add_argument("--seed", type=int, help="base seed override for the recipes")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "simulate":
            cmd_simulate(_config_from_args(args))
        elif args.command == "analyze":
            cmd_analyze(_config_from_args(args))
        elif args.command == "plot":
            cmd_plot(_config_from_args(args))
        elif args.command == "reproduce":
            names = list(RECIPES) if "all" in args.figure else args.figure
            out_root = Path(args.out) if args.out is not None else Path("out")
            run_recipes(names, out_root, base_seed=args.seed)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
