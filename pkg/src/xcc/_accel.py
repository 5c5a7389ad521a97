"""Optional numba acceleration.

Hot loops (integer lattice reduction, oracle enumeration) are written
twice: a numba ``@njit`` kernel and a numpy/pure-python fallback with the
same signature.  Which one runs is decided once at import time:

* numba missing            -> fallback
* ``XCC_NO_NUMBA=1`` set   -> fallback
* otherwise                -> jitted kernel

``XCC_THREADS`` caps the numba thread pool; it must be applied before
the first parallel kernel runs, so it is handled here.  ``xcc bench``
times both paths against each other.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("XCC_NO_NUMBA", "").strip() not in ("", "0")

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _DISABLED

if HAS_NUMBA:
    _threads = os.environ.get("XCC_THREADS", "").strip()
    if _threads:
        try:
            numba.set_num_threads(max(1, int(_threads)))
        except (ValueError, RuntimeError):
            pass


def njit(func):
    """``numba.njit(cache=True)`` when acceleration is on, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def pick(jitted, fallback):
    """Select the active implementation of a dual-path kernel."""
    return jitted if USE_NUMBA else fallback
