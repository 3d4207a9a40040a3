"""Compensated (Neumaier) summation, scalar and vectorised.

The scalar :class:`CompensatedAccumulator` keeps its running sums scaled by
an exact power of two, so rescaling on a new maximum never rounds.  The
array reductions group terms into shells and return per-shell log sums.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .._accel import dispatch, njit
from .logcomplex import NEG_INF, ZERO, LogComplex, unit

_LN2 = math.log(2.0)


def _two_sum(s: float, c: float, x: float) -> tuple[float, float]:
    t = s + x
    if abs(s) >= abs(x):
        c += (s - t) + x
    else:
        c += (x - t) + s
    return t, c


class CompensatedAccumulator:
    """Running complex sum with Neumaier compensation and power-of-two scaling."""

    __slots__ = ("_exp", "_re", "_rc", "_im", "_ic", "count")

    def __init__(self):
        self._exp = None  # values are stored divided by 2**_exp
        self._re = self._rc = self._im = self._ic = 0.0
        self.count = 0

    def _rescale_to(self, e: int) -> None:
        if self._exp is None:
            self._exp = e
            return
        if e <= self._exp:
            return
        shift = self._exp - e
        self._re = math.ldexp(self._re, shift)
        self._rc = math.ldexp(self._rc, shift)
        self._im = math.ldexp(self._im, shift)
        self._ic = math.ldexp(self._ic, shift)
        self._exp = e

    def _add_scaled(self, re: float, im: float) -> None:
        self._re, self._rc = _two_sum(self._re, self._rc, re)
        self._im, self._ic = _two_sum(self._im, self._ic, im)
        self.count += 1

    def add(self, z) -> None:
        z = complex(z)
        if z == 0:
            self.count += 1
            return
        e = math.frexp(max(abs(z.real), abs(z.imag)))[1]
        if self._exp is None or e > self._exp:
            self._rescale_to(max(e, 0) if self._exp is None else e)
        self._add_scaled(math.ldexp(z.real, -self._exp), math.ldexp(z.imag, -self._exp))

    def add_log(self, v: LogComplex) -> None:
        if v.is_zero:
            self.count += 1
            return
        lm = float(v.log_mag)
        e = int(math.floor(lm / _LN2)) + 1
        if self._exp is None or e > self._exp:
            self._rescale_to(e)
        m = math.exp(lm - self._exp * _LN2)
        u = unit(float(v.arg))
        self._add_scaled(m * u.real, m * u.imag)

    def extend(self, values) -> None:
        for v in values:
            if isinstance(v, LogComplex):
                self.add_log(v)
            else:
                self.add(v)

    def scaled_value(self) -> tuple[complex, int]:
        """``(s, e)`` with the sum equal to ``s * 2**e``."""
        if self._exp is None:
            return 0j, 0
        return complex(self._re + self._rc, self._im + self._ic), self._exp

    def complex_value(self) -> complex:
        s, e = self.scaled_value()
        return complex(math.ldexp(s.real, e), math.ldexp(s.imag, e))

    def value(self) -> LogComplex:
        s, e = self.scaled_value()
        if s == 0:
            return ZERO
        ls = LogComplex.from_complex(s)
        return LogComplex(ls.log_mag + e * _LN2, ls.arg)


def compensated_sum(values) -> float:
    """Neumaier sum of a real sequence."""
    s = c = 0.0
    for x in values:
        s, c = _two_sum(s, c, float(x))
    return s + c


# -- shell reductions over arrays of complex logarithms ---------------------------------


@njit
def _reduce_shells_nb(L, offsets):
    nsh = offsets.shape[0] - 1
    out_lm = np.empty(nsh)
    out_arg = np.empty(nsh)
    out_mag = np.empty(nsh)
    for k in range(nsh):
        lo = offsets[k]
        hi = offsets[k + 1]
        m = -np.inf
        for i in range(lo, hi):
            if L[i].real > m:
                m = L[i].real
        if hi <= lo or m == -np.inf:
            out_lm[k] = -np.inf
            out_arg[k] = 0.0
            out_mag[k] = -np.inf
            continue
        sr = 0.0
        cr = 0.0
        si = 0.0
        ci = 0.0
        sm = 0.0
        cm = 0.0
        for i in range(lo, hi):
            a = np.exp(L[i].real - m)
            xr = a * np.cos(L[i].imag)
            xi = a * np.sin(L[i].imag) if abs(L[i].imag) != np.pi else 0.0
            t = sr + xr
            if abs(sr) >= abs(xr):
                cr += (sr - t) + xr
            else:
                cr += (xr - t) + sr
            sr = t
            t = si + xi
            if abs(si) >= abs(xi):
                ci += (si - t) + xi
            else:
                ci += (xi - t) + si
            si = t
            t = sm + a
            cm += (sm - t) + a
            sm = t
        re = sr + cr
        im = si + ci
        mod = np.hypot(re, im)
        if mod == 0.0:
            out_lm[k] = -np.inf
            out_arg[k] = 0.0
        else:
            out_lm[k] = m + np.log(mod)
            out_arg[k] = np.arctan2(im, re)
        out_mag[k] = m + np.log(sm + cm)
    return out_lm, out_arg, out_mag


def _reduce_shells_np(L, offsets):
    """Per-shell ``log(sum exp(L))`` and ``log(sum |exp(L)|)``.

    ``offsets`` delimits shells: shell ``k`` is ``L[offsets[k]:offsets[k+1]]``.
    Returns arrays (log_mag, arg, log_abs_sum).  Uses ``math.fsum``, which is
    correctly rounded and therefore independent of summation order.
    """
    nsh = len(offsets) - 1
    out_lm = np.full(nsh, NEG_INF)
    out_arg = np.zeros(nsh)
    out_mag = np.full(nsh, NEG_INF)
    for k in range(nsh):
        seg = L[offsets[k] : offsets[k + 1]]
        if seg.size == 0:
            continue
        m = float(seg.real.max())
        if m == NEG_INF:
            continue
        a = np.exp(seg.real - m)
        re = math.fsum(a * np.cos(seg.imag))
        im = math.fsum(a * np.where(np.abs(seg.imag) == np.pi, 0.0, np.sin(seg.imag)))
        mod = math.hypot(re, im)
        if mod > 0.0:
            out_lm[k] = m + math.log(mod)
            out_arg[k] = math.atan2(im, re)
        out_mag[k] = m + math.log(math.fsum(a))
    return out_lm, out_arg, out_mag


reduce_shells = dispatch(_reduce_shells_nb, _reduce_shells_np)


def logsumexp_complex(L) -> LogComplex:
    """Sum of ``exp(L)`` over a complex array, returned in log form."""
    L = np.ascontiguousarray(L, dtype=np.complex128).ravel()
    lm, arg, _ = reduce_shells(L, np.array([0, L.size], dtype=np.int64))
    return LogComplex(float(lm[0]), float(arg[0]))


def combine_partials(parts) -> LogComplex:
    """Ordered compensated combination of LogComplex partial sums."""
    acc = CompensatedAccumulator()
    for p in parts:
        acc.add_log(p)
    return acc.value()
