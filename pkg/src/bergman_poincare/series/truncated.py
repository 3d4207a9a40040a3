"""Truncated series values with per-shell records and an empirical tail bound."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..numerics.logcomplex import ZERO, LogComplex
from ..numerics.summation import combine_partials, reduce_shells

DECAY_THRESHOLD = 0.9
EPS = float(np.finfo(float).eps)
CANCELLED = "CANCELLED"
UNCONVERGED = "UNCONVERGED"


@dataclass(frozen=True)
class Shell:
    """Contribution of all terms of one word length."""

    depth: int
    value: LogComplex
    log_abs: float  # log of the sum of |term|
    count: int

    @property
    def magnitude(self) -> float:
        return math.exp(self.log_abs) if self.log_abs > -math.inf else 0.0


def tail_from_shells(shells, exhausted: bool = False) -> float:
    """Geometric tail bound from the last three shell ratios.

    Returns 0 for an exhausted enumeration and +inf unless the last three
    ratios of shell magnitudes are all below ``DECAY_THRESHOLD``.
    """
    if exhausted:
        return 0.0
    logs = [s.log_abs for s in shells]
    if len(logs) < 4:
        return math.inf
    last = logs[-4:]
    if all(v == -math.inf for v in last[1:]):
        return 0.0
    ratios = []
    for prev, cur in zip(last[:-1], last[1:]):
        if cur == -math.inf:
            ratios.append(0.0)
        elif prev == -math.inf:
            return math.inf
        else:
            ratios.append(math.exp(cur - prev))
    if max(ratios) >= DECAY_THRESHOLD:
        return math.inf
    rho = max(ratios)
    return math.exp(last[-1]) * rho / (1.0 - rho) if last[-1] > -math.inf else 0.0


@dataclass(frozen=True)
class TruncatedSum:
    """A partial sum organised by word-length shells.

    ``value`` is the compensated sum of the shell values (which already carry
    the normalising constant and the sign-policy factor).
    """

    value: LogComplex
    shells: tuple = ()
    tail_estimate: float = math.inf
    terms: int = 0
    cancellation_flag: bool = False
    flags: tuple = ()
    info: dict = field(default_factory=dict, compare=False)
    rounding_error: float = 0.0

    @property
    def uncertainty(self) -> float:
        """Tail estimate plus the floating-point rounding allowance."""
        return self.tail_estimate + self.rounding_error

    @property
    def converged(self) -> bool:
        return math.isfinite(self.tail_estimate)

    @property
    def depth(self) -> int:
        return len(self.shells) - 1

    def to_complex(self):
        return self.value.to_complex()

    def __complex__(self) -> complex:
        return complex(self.value.to_complex())

    def replay(self) -> LogComplex:
        """Recombine the recorded shells."""
        return combine_partials(s.value for s in self.shells)

    def shell_magnitudes(self) -> np.ndarray:
        return np.array([s.magnitude for s in self.shells])

    def restricted(self, depth: int) -> "TruncatedSum":
        """The same sum truncated at a smaller depth (no re-evaluation)."""
        shells = self.shells[: depth + 1]
        tail = tail_from_shells(shells, self.info.get("exhausted", False))
        flags = tuple(f for f in self.flags if f != UNCONVERGED) + (() if math.isfinite(tail) else (UNCONVERGED,))
        return TruncatedSum(combine_partials(s.value for s in shells), shells, tail,
                            sum(s.count for s in shells), self.cancellation_flag, flags, dict(self.info),
                            rounding_floor(shells, self.info.get("exponent", 1)))


def rescaled(s: TruncatedSum, c: float) -> TruncatedSum:
    """The sum multiplied by a positive constant, shell by shell."""
    lc = math.log(c)
    shells = tuple(Shell(x.depth, LogComplex(x.value.log_mag + lc, x.value.arg) if not x.value.is_zero else x.value,
                         x.log_abs + lc, x.count) for x in s.shells)
    info = dict(s.info)
    info["factor"] = info.get("factor", 1) * c
    return TruncatedSum(combine_partials(x.value for x in shells), shells, s.tail_estimate * c, s.terms,
                        s.cancellation_flag, s.flags, info, s.rounding_error * c)


def cancelled_sum(depth: int, reason: str) -> TruncatedSum:
    """Exact zero forced by the sign policy."""
    return TruncatedSum(ZERO, (), 0.0, 0, True, (CANCELLED,), {"reason": reason, "depth": depth})


def rounding_floor(shells, exponent) -> float:
    """Allowance for rounding in the terms: a few ulps per unit of the term exponent, times sum |term|."""
    mags = [s.log_abs for s in shells if s.log_abs > -math.inf]
    if not mags:
        return 0.0
    m = max(mags)
    total = math.exp(m) * math.fsum(math.exp(v - m) for v in mags)
    return 8.0 * EPS * (1.0 + abs(exponent)) * total


def sum_from_logs(L: np.ndarray, offsets: np.ndarray, log_const: float = 0.0, exhausted: bool = False,
                  info: dict | None = None, exponent: float = 1.0) -> TruncatedSum:
    """Reduce an array of log-terms delimited into shells by ``offsets``.

    ``exponent`` is the power applied to the per-term logarithm; it scales the
    rounding allowance.
    """
    L = np.ascontiguousarray(L, dtype=np.complex128)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    lm, arg, la = reduce_shells(L, offsets)
    shells = []
    for k in range(len(offsets) - 1):
        cnt = int(offsets[k + 1] - offsets[k])
        val = LogComplex(float(lm[k]) + log_const, float(arg[k])) if lm[k] > -math.inf else ZERO
        shells.append(Shell(k, val, float(la[k]) + log_const if la[k] > -math.inf else -math.inf, cnt))
    shells = tuple(shells)
    value = combine_partials(s.value for s in shells)
    tail = tail_from_shells(shells, exhausted)
    flags = () if math.isfinite(tail) else (UNCONVERGED,)
    info = dict(info or {})
    info["exhausted"] = exhausted
    info["exponent"] = exponent
    return TruncatedSum(value, shells, tail, int(offsets[-1]), False, flags, info,
                        rounding_floor(shells, exponent))
