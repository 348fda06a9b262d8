"""Backend selection for the hot numeric kernels.

Two implementations of every kernel exist: a loop form compiled with numba
and a vectorized numpy form.  The environment variable ZETASCOPE_BACKEND
picks one:

    ZETASCOPE_BACKEND=numba   force numba (error if unavailable)
    ZETASCOPE_BACKEND=numpy   force the pure-numpy fallback
    unset / auto              numba when importable, else numpy

Both backends produce results within documented error bounds; outputs are
byte-deterministic for a fixed backend and input, at every thread count
(reductions run serially, parallel loops only write independent elements).
"""

import os

_requested = os.environ.get("ZETASCOPE_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        "ZETASCOPE_BACKEND must be 'auto', 'numba' or 'numpy', got %r" % _requested
    )

HAS_NUMBA = False
if _requested != "numpy":
    try:
        import numba  # noqa: F401

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False
        if _requested == "numba":
            raise ImportError("ZETASCOPE_BACKEND=numba but numba is not importable")

USING_NUMBA = HAS_NUMBA and _requested != "numpy"
BACKEND = "numba" if USING_NUMBA else "numpy"

if USING_NUMBA:
    from numba import njit, prange
else:  # stand-ins so kernel source imports cleanly; never called for dispatch

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap

    prange = range


def set_threads(n):
    """Set the worker count for parallel element-wise kernels (numba only)."""
    if USING_NUMBA and n is not None and n > 0:
        import numba

        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
