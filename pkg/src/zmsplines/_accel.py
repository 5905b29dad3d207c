"""Backend selection for the enumeration kernels.

Set ``ZMSPLINES_NO_NUMBA=1`` to force the pure-numpy path even when numba is
importable. Kernels are looked up through :func:`backend` at call time, so
tests can also pass ``backend="numpy"`` explicitly.
"""

import logging
import os

logger = logging.getLogger(__name__)

_DISABLED = os.environ.get("ZMSPLINES_NO_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("disabled by ZMSPLINES_NO_NUMBA")
    import numba

    njit = numba.njit
    HAVE_NUMBA = True
except ImportError as exc:
    logger.debug("numba unavailable (%s); using numpy kernels", exc)
    HAVE_NUMBA = False

    def njit(pyfunc=None, **kwargs):
        """Null decorator standing in for numba.njit."""

        def wrap(func):
            return func

        return wrap if pyfunc is None else wrap(pyfunc)


def backend(requested=None):
    """Resolve a backend name: ``"numba"``, ``"numpy"`` or ``None`` for the default."""
    if requested is None:
        return "numba" if HAVE_NUMBA else "numpy"
    if requested not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {requested!r}")
    if requested == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is disabled or missing")
    return requested
