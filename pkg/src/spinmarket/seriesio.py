"""CSV persistence and run records.

CSV is the canonical data format: a header row, one record per line, floats
written with repr() so every value round-trips bit-exactly.  File layouts:

* series:          t,value
* histogram:       bin_lo,bin_hi,count,gaussian_expected
* autocorrelation: lag,c_r,c_abs_r

A run record is a flat structured-text document (key: value lines) holding
the effective configuration snapshot, the resolved seed, software version,
wall-clock duration, and sha256 checksums of the emitted files.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Series
from .errors import DataError


def _fmt(v: float) -> str:
    return repr(float(v))


def write_series_csv(path, series: Series) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "value"])
        for t, v in zip(series.times(), series.values):
            w.writerow([int(t), _fmt(v)])


def read_series_csv(path) -> Series:
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DataError(f"cannot read series file {path}: {exc}") from exc
    if not rows or rows[0] != ["t", "value"]:
        raise DataError(f"{path}: expected header 't,value'")
    if len(rows) < 2:
        raise DataError(f"{path}: series file holds no samples")
    try:
        ts = [int(r[0]) for r in rows[1:]]
        vs = [float(r[1]) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise DataError(f"{path}: malformed series row: {exc}") from exc
    t0 = ts[0]
    if ts != list(range(t0, t0 + len(ts))):
        raise DataError(f"{path}: time index must be contiguous")
    return Series(np.array(vs), t0=t0)


def write_histogram_csv(path, hist, gaussian_expected) -> None:
    path = Path(path)
    expected = np.asarray(gaussian_expected, dtype=np.float64)
    if len(expected) != len(hist.counts):
        raise DataError("gaussian_expected length must match the bin count")
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["bin_lo", "bin_hi", "count", "gaussian_expected"])
        for lo, hi, cnt, exp in zip(hist.edges[:-1], hist.edges[1:], hist.counts, expected):
            w.writerow([_fmt(lo), _fmt(hi), int(cnt), _fmt(exp)])


def read_histogram_csv(path):
    """Returns (edges, counts, gaussian_expected) arrays."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DataError(f"cannot read histogram file {path}: {exc}") from exc
    if not rows or rows[0] != ["bin_lo", "bin_hi", "count", "gaussian_expected"]:
        raise DataError(f"{path}: expected header 'bin_lo,bin_hi,count,gaussian_expected'")
    if len(rows) < 2:
        raise DataError(f"{path}: histogram file holds no bins")
    try:
        lo = [float(r[0]) for r in rows[1:]]
        hi = [float(r[1]) for r in rows[1:]]
        counts = np.array([int(r[2]) for r in rows[1:]], dtype=np.int64)
        expected = np.array([float(r[3]) for r in rows[1:]], dtype=np.float64)
    except (ValueError, IndexError) as exc:
        raise DataError(f"{path}: malformed histogram row: {exc}") from exc
    edges = np.array(lo + [hi[-1]], dtype=np.float64)
    return edges, counts, expected


def write_autocorr_csv(path, c_r: Series, c_abs_r: Series) -> None:
    if len(c_r) != len(c_abs_r) or c_r.t0 != 0 or c_abs_r.t0 != 0:
        raise DataError("autocorrelation tables must share lags starting at 0")
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lag", "c_r", "c_abs_r"])
        for lag in range(len(c_r)):
            w.writerow([lag, _fmt(c_r.values[lag]), _fmt(c_abs_r.values[lag])])


def read_autocorr_csv(path) -> tuple[Series, Series]:
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DataError(f"cannot read autocorrelation file {path}: {exc}") from exc
    if not rows or rows[0] != ["lag", "c_r", "c_abs_r"]:
        raise DataError(f"{path}: expected header 'lag,c_r,c_abs_r'")
    if len(rows) < 2:
        raise DataError(f"{path}: autocorrelation file holds no rows")
    try:
        lags = [int(r[0]) for r in rows[1:]]
        c_r = [float(r[1]) for r in rows[1:]]
        c_abs = [float(r[2]) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise DataError(f"{path}: malformed autocorrelation row: {exc}") from exc
    if lags != list(range(len(lags))):
        raise DataError(f"{path}: lags must run 0..max_lag")
    return Series(np.array(c_r), t0=0), Series(np.array(c_abs), t0=0)


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunRecord:
    """Provenance of one run: snapshot, timing, and output checksums."""

    config: dict
    software_version: str
    backend: str
    duration_seconds: float
    checksums: dict = field(default_factory=dict)  # filename -> sha256

    def add_file(self, path) -> None:
        path = Path(path)
        self.checksums[path.name] = sha256_file(path)


def write_run_record(path, record: RunRecord) -> None:
    path = Path(path)
    lines = ["format: spinmarket-run-record v1"]
    lines.append(f"software_version: {record.software_version}")
    lines.append(f"backend: {record.backend}")
    lines.append(f"duration_seconds: {record.duration_seconds:.3f}")
    for key in sorted(record.config):
        lines.append(f"config.{key}: {record.config[key]}")
    for name in sorted(record.checksums):
        lines.append(f"sha256.{name}: {record.checksums[name]}")
    path.write_text("\n".join(lines) + "\n")


def read_run_record(path) -> RunRecord:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read run record {path}: {exc}") from exc
    config: dict = {}
    checksums: dict = {}
    meta = {"software_version": "", "backend": "", "duration_seconds": 0.0}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if ":" not in line:
            raise DataError(f"{path}:{lineno}: expected 'key: value'")
        key, value = (part.strip() for part in line.split(":", 1))
        if key.startswith("config."):
            config[key[len("config."):]] = value
        elif key.startswith("sha256."):
            checksums[key[len("sha256."):]] = value
        elif key == "duration_seconds":
            meta["duration_seconds"] = float(value)
        elif key in meta:
            meta[key] = value
        elif key != "format":
            raise DataError(f"{path}:{lineno}: unknown record key {key!r}")
    return RunRecord(config=config, checksums=checksums, **meta)
