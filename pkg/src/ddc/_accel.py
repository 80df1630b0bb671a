"""Numba switch.

Set ``DDC_DISABLE_NUMBA=1`` to run every kernel on its pure-Python/numpy
path.  ``NUMBA_DISABLE_JIT=1`` is honoured as well.
"""
import os

_OFF = ("1", "true", "yes", "on")

USE_NUMBA = not (
    os.environ.get("DDC_DISABLE_NUMBA", "").lower() in _OFF
    or os.environ.get("NUMBA_DISABLE_JIT", "").lower() in _OFF
)

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def njit(fn):
    """``numba.njit(cache=True, nogil=True)`` when enabled, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def backend():
    return "numba" if USE_NUMBA else "numpy"
