"""Complex numbers stored as (log-magnitude, argument).

Products like ``(cz + d)**(-p)`` for weights in the hundreds overflow or
underflow doubles long before the sums they feed into lose meaning, so all
series terms travel in this representation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import mpmath

from . import precision

NEG_INF = float("-inf")

# Cody-Waite split of 2*pi: _C1 has 8 significant bits so k*_C1 is exact
# for |k| < 2**45.
_C1 = 6.28125
with mpmath.workdps(60):
    _C2 = float(2 * mpmath.pi - _C1)
    _C3 = float(2 * mpmath.pi - _C1 - mpmath.mpf(_C2))
_TWO_PI = 2.0 * math.pi


def wrap_angle(x):
    """Reduce an angle into (-pi, pi]."""
    if precision.extended() or isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
        two_pi = 2 * mpmath.pi
        r = x - two_pi * mpmath.nint(x / two_pi)
        if r <= -mpmath.pi:
            r += two_pi
        elif r > mpmath.pi:
            r -= two_pi
        return r
    x = float(x)
    if -math.pi < x <= math.pi:
        return x
    if not math.isfinite(x):
        raise ValueError("cannot wrap a non-finite angle")
    k = float(round(x / _TWO_PI))
    r = ((x - k * _C1) - k * _C2) - k * _C3
    if r <= -math.pi:
        r += _TWO_PI
    elif r > math.pi:
        r -= _TWO_PI
    return r


def unit(arg: float) -> complex:
    """``exp(i arg)``, exact on the axes so real and imaginary values stay exactly so."""
    if arg == 0.0:
        return 1.0 + 0j
    if arg == math.pi or arg == -math.pi:
        return -1.0 + 0j
    if arg == 0.5 * math.pi:
        return 1j
    if arg == -0.5 * math.pi:
        return -1j
    return complex(math.cos(arg), math.sin(arg))


def expm1c(z: complex) -> complex:
    """``exp(z) - 1`` without cancellation for small |z|."""
    a, b = float(complex(z).real), float(complex(z).imag)
    s = math.sin(0.5 * b)
    return complex(math.expm1(a) * math.cos(b) - 2.0 * s * s, math.exp(a) * math.sin(b))


def _is_neg_inf(v) -> bool:
    if isinstance(v, mpmath.mpf):
        return v == mpmath.ninf
    return v == NEG_INF


@dataclass(frozen=True)
class LogComplex:
    """``exp(log_mag) * exp(1j * arg)``; ``log_mag = -inf`` is zero (with arg 0)."""

    log_mag: float
    arg: float = 0.0

    def __post_init__(self):
        if _is_neg_inf(self.log_mag):
            object.__setattr__(self, "arg", 0.0)
        elif isinstance(self.log_mag, float) and math.isnan(self.log_mag):
            raise ValueError("NaN log-magnitude")
        else:
            object.__setattr__(self, "arg", wrap_angle(self.arg))

    # -- construction / conversion -------------------------------------------------
    @classmethod
    def from_complex(cls, z) -> "LogComplex":
        if precision.extended() or isinstance(z, (mpmath.mpc, mpmath.mpf)):
            z = mpmath.mpc(z)
            if z == 0:
                return cls(mpmath.ninf, 0.0)
            return cls(mpmath.log(abs(z)), mpmath.arg(z))
        z = complex(z)
        if z == 0:
            return ZERO
        m = abs(z)
        if m == 0.0 or math.isinf(m):
            # subnormal/huge components: rescale before taking the modulus
            s = max(abs(z.real), abs(z.imag))
            e = math.frexp(s)[1]
            zs = complex(math.ldexp(z.real, -e), math.ldexp(z.imag, -e))
            return cls(math.log(abs(zs)) + e * math.log(2.0), cmath.phase(z))
        return cls(math.log(m), cmath.phase(z))

    @classmethod
    def from_log(cls, log_z) -> "LogComplex":
        """From a complex logarithm ``log_z`` (any branch)."""
        log_z = complex(log_z) if not isinstance(log_z, mpmath.mpc) else log_z
        return cls(log_z.real, log_z.imag)

    def to_complex(self):
        if self.is_zero:
            return 0j
        if isinstance(self.log_mag, mpmath.mpf) or precision.extended():
            return mpmath.exp(mpmath.mpf(self.log_mag)) * mpmath.expjpi(mpmath.mpf(self.arg) / mpmath.pi)
        return math.exp(self.log_mag) * unit(self.arg)

    def __complex__(self) -> complex:
        return complex(self.to_complex())

    @property
    def is_zero(self) -> bool:
        return _is_neg_inf(self.log_mag)

    # -- arithmetic ----------------------------------------------------------------
    def __mul__(self, other: "LogComplex") -> "LogComplex":
        return log_mul(self, other)

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        return log_mul(self, log_pow(other, -1))

    def __pow__(self, k: int) -> "LogComplex":
        return log_pow(self, k)

    def conjugate(self) -> "LogComplex":
        if self.is_zero:
            return self
        return LogComplex(self.log_mag, -self.arg)

    def __abs__(self) -> float:
        return math.exp(self.log_mag) if not self.is_zero else 0.0

    def __add__(self, other: "LogComplex") -> "LogComplex":
        return log_add(self, other)

    def __neg__(self) -> "LogComplex":
        if self.is_zero:
            return self
        return LogComplex(self.log_mag, self.arg + (mpmath.pi if isinstance(self.arg, mpmath.mpf) else math.pi))

    def isclose(self, other: "LogComplex", rel: float = 1e-12) -> bool:
        """Relative closeness of the represented complex numbers."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        dm = float(self.log_mag - other.log_mag)
        da = float(wrap_angle(self.arg - other.arg))
        # |a/b - 1| for a/b = exp(dm + i da)
        return abs(expm1c(complex(dm, da))) <= rel


ZERO = LogComplex(NEG_INF, 0.0)
ONE = LogComplex(0.0, 0.0)


def from_complex(z) -> LogComplex:
    return LogComplex.from_complex(z)


def to_complex(a: LogComplex):
    return a.to_complex()


def log_mul(a: LogComplex, b: LogComplex) -> LogComplex:
    if a.is_zero or b.is_zero:
        return ZERO
    return LogComplex(a.log_mag + b.log_mag, a.arg + b.arg)


def log_pow(a: LogComplex, k: int) -> LogComplex:
    if int(k) != k:
        raise TypeError("log_pow takes an integer exponent")
    k = int(k)
    if a.is_zero:
        if k < 0:
            raise ZeroDivisionError("zero raised to a negative power")
        return ONE if k == 0 else ZERO
    return LogComplex(a.log_mag * k, a.arg * k)


def log_add(a: LogComplex, b: LogComplex) -> LogComplex:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if b.log_mag > a.log_mag:
        a, b = b, a
    if isinstance(a.log_mag, mpmath.mpf) or precision.extended():
        r = 1 + mpmath.exp(b.log_mag - a.log_mag) * mpmath.expj(b.arg - a.arg)
    else:
        r = 1.0 + math.exp(b.log_mag - a.log_mag) * unit(wrap_angle(b.arg - a.arg))
    if r == 0:
        return ZERO
    rl = LogComplex.from_complex(r)
    return LogComplex(a.log_mag + rl.log_mag, a.arg + rl.arg)


def log_sum(values: Iterable[LogComplex]) -> LogComplex:
    """Compensated sum of LogComplex values."""
    from .summation import CompensatedAccumulator

    acc = CompensatedAccumulator()
    for v in values:
        acc.add_log(v)
    return acc.value()
