"""Backend switch for the hot kernels.

Every accelerated kernel exists twice: a numba ``@njit`` loop and a
vectorised numpy version.  The numba path is used when numba imports and
``BERGMAN_POINCARE_NUMBA`` is not set to ``0``; set it to ``0`` to force the
pure-numpy path.  :func:`use_backend` switches at runtime (tests, benchmark).
"""
from __future__ import annotations

import contextlib
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None
    HAVE_NUMBA = False

_env = os.environ.get("BERGMAN_POINCARE_NUMBA", "1").strip().lower()
_backend = "numba" if HAVE_NUMBA and _env not in ("0", "false", "no", "off") else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` with cache/nogil on, or the identity when numba is absent."""
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    return numba.njit(*args, **kwargs)


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


@contextlib.contextmanager
def use_backend(name: str):
    old = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def dispatch(nb_impl, np_impl):
    """Return a callable choosing ``nb_impl`` or ``np_impl`` at call time."""

    def call(*args, **kwargs):
        if _backend == "numba":
            return nb_impl(*args, **kwargs)
        return np_impl(*args, **kwargs)

    call.numba = nb_impl
    call.numpy = np_impl
    call.__name__ = getattr(np_impl, "__name__", "kernel").lstrip("_").replace("_np", "")
    call.__doc__ = np_impl.__doc__
    return call
