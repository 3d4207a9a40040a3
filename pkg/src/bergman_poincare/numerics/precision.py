"""Global working precision.

53 bits means hardware doubles.  Larger values route scalar arithmetic in
:mod:`logcomplex` (and the scalar series path) through mpmath.
"""
from __future__ import annotations

import contextlib

import mpmath

SUPPORTED_PRECISIONS = (53, 128, 256)

_bits = 53


def get_precision() -> int:
    return _bits


def set_precision(bits: int) -> None:
    global _bits
    bits = int(bits)
    if bits < 53:
        raise ValueError("precision below 53 bits is not supported")
    _bits = bits
    mpmath.mp.prec = bits


def extended() -> bool:
    return _bits > 53


@contextlib.contextmanager
def working_precision(bits: int):
    old = _bits
    old_mp = mpmath.mp.prec
    set_precision(bits)
    try:
        yield
    finally:
        set_precision(old)
        mpmath.mp.prec = old_mp
