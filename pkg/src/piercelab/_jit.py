"""Optional numba acceleration.

Every kernel in _kernels.py is plain integer Python that numba can compile;
when numba is missing the same code runs uncompiled (correct, much slower).
Import of numba is deferred to first kernel use because it costs seconds.
"""

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
