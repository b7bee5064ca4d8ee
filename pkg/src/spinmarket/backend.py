"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the
pure-Python kernel is used.  Set SPINMARKET_BACKEND=python (or =compiled)
before import to force a choice, e.g. for benchmarking.
"""

from __future__ import annotations

import os

from . import _pykernel
from .errors import ConfigurationError

try:
    from . import _ckernel
except ImportError:
    _ckernel = None

_KERNELS = {"python": _pykernel}
if _ckernel is not None:
    _KERNELS["compiled"] = _ckernel


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_KERNELS))


def get_kernel(name: str | None = None):
    """Return a kernel module by name, or the selected default."""
    if name is None:
        return _selected
    try:
        return _KERNELS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown backend {name!r}; available: {', '.join(available_backends())}"
        ) from None


_forced = os.environ.get("SPINMARKET_BACKEND", "").strip().lower()
if _forced in ("", "auto"):
    _selected = _KERNELS.get("compiled", _pykernel)
else:
    _selected = get_kernel(_forced)

BACKEND = _selected.NAME
