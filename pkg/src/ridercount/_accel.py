"""Switch between numba-compiled kernels and the pure-numpy fallback.

Set ``RIDERCOUNT_DISABLE_NUMBA=1`` to force the fallback. The fallback is also
used when numba cannot be imported.
"""

import os

_FLAG = "RIDERCOUNT_DISABLE_NUMBA"


def _numba_importable() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return False
    return True


NUMBA_AVAILABLE = _numba_importable()


def numba_enabled() -> bool:
    """Read the flag at call time so tests can toggle it with monkeypatch."""
    if os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on"):
        return False
    return NUMBA_AVAILABLE


if NUMBA_AVAILABLE:
    from numba import njit
else:  # pragma: no cover

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
