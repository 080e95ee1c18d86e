"""Backend switch for the compiled kernels.

Set ``DAMPEDQHO_DISABLE_NUMBA=1`` before import to force the pure-numpy
kernels even when numba is installed.
"""
from __future__ import annotations

import os

_DISABLED = os.environ.get("DAMPEDQHO_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def jit(fn):
    """Compile ``fn`` with ``numba.njit(cache=True)`` when numba is active."""
    if _njit is None:
        return fn
    return _njit(cache=True)(fn)


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
