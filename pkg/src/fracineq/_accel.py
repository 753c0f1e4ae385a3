"""Numba switch.

Kernels in :mod:`fracineq._kernels` are compiled with numba when it is
importable and ``FRACINEQ_NUMBA`` is not set to a false value
(``0``, ``false``, ``no``, ``off``).  The flag is read once at import time.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

_FALSE = {"0", "false", "no", "off"}

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("FRACINEQ_NUMBA", "1").strip().lower() not in _FALSE


def njit(fn):
    """``numba.njit(cache=True)`` when numba is available, else identity."""
    if not NUMBA_AVAILABLE:
        return fn
    return numba.njit(cache=True)(fn)
