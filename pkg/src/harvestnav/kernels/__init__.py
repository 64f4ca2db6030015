"""Kernel backend selection.

The pixel pipeline (color classification, directional run scanning, overlap
resolution, rasterizing) exists twice: an njit-compiled numba backend and a
pure-numpy fallback. Both produce identical outputs; the numba path is the
default because the closed-loop simulator calls these per frame.

Select explicitly with the environment variable::

    HARVESTNAV_KERNELS=numpy   # force the fallback
    HARVESTNAV_KERNELS=numba   # force numba (error if unavailable)

Unset, numba is used when importable.
"""

import os

from . import numpy_impl

_BACKENDS = {"numpy": numpy_impl}
_numba_error = None
try:
    from . import numba_impl

    _BACKENDS["numba"] = numba_impl
except ImportError as exc:  # pragma: no cover - numba is a hard dependency
    _numba_error = exc

_requested = os.environ.get("HARVESTNAV_KERNELS", "").strip().lower()
if _requested:
    if _requested not in ("numpy", "numba"):
        raise RuntimeError(
            f"HARVESTNAV_KERNELS must be 'numpy' or 'numba', got {_requested!r}"
        )
    if _requested not in _BACKENDS:
        raise RuntimeError(f"requested kernel backend {_requested!r} unavailable: {_numba_error}")
    _active = _BACKENDS[_requested]
else:
    _active = _BACKENDS.get("numba", numpy_impl)


def active_backend() -> str:
    """Name of the backend the package-level kernels are bound to."""
    return _active.name


def available_backends() -> dict:
    """Mapping of backend name to backend module (for benchmarks/parity tests)."""
    return dict(_BACKENDS)


segment_rgb = _active.segment_rgb
scan_directions = _active.scan_directions
dedup_overlapping = _active.dedup_overlapping
fill_runs_t = _active.fill_runs_t
