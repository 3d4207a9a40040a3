"""Closed-form Bergman kernels in the sigma^p trivialisation."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ..numerics import precision
from ..numerics.logcomplex import LogComplex
from .points import DomainPoint, log_h, require_same


class WeightError(ValueError):
    """The weight is below the threshold where the kernel series converges."""


def p_min(kind: str, n: int = 1) -> int:
    """Smallest admissible integer weight: p > 2 on H^n, p > 2n on Siegel space, else 1."""
    return {"halfplane": 3, "siegel": 2 * n + 1}.get(kind, 1)


def check_weight(kind: str, n: int, p) -> int:
    if int(p) != p:
        raise WeightError(f"weight must be an integer, got {p!r}")
    p = int(p)
    if p < p_min(kind, n):
        raise WeightError(f"weight p={p} below the convergence threshold p >= {p_min(kind, n)} for {kind}({n})")
    return p


def siegel_constant(n: int, p: int) -> float:
    """Default normalisation of the Siegel kernel.

    For n = 1 it is matched to the half-plane kernel; for n >= 2 the exact
    constant is not computed here and defaults to 1.
    """
    return (p - 1) / (4 * math.pi) if n == 1 else 1.0


def halfplane_constant(n: int, p: int) -> float:
    return ((p - 1) / (4 * math.pi)) ** n


def ball_constant(n: int, p: int) -> float:
    return math.factorial(n) / math.pi ** n * math.comb(n + p, n)


@dataclass(frozen=True)
class KernelValue:
    """Coefficient of ``sigma_z^p (x) conj(sigma_w)^p`` in the kernel."""

    value: LogComplex
    p: int
    kind: str
    n: int = 1

    def __complex__(self) -> complex:
        return complex(self.value.to_complex())

    def to_complex(self):
        return self.value.to_complex()

    def pointwise_log_norm(self, z: DomainPoint, w: DomainPoint, area: float = 1.0) -> float:
        """log |K(z, w)|_h, with the h-factors of both sections multiplied in."""
        return float(self.value.log_mag) + 0.5 * self.p * (log_h(z, area) + log_h(w, area))


def _log_halfplane(z: DomainPoint, w: DomainPoint, p: int):
    if precision.extended():
        total = mpmath.mpc(z.n * mpmath.log(mpmath.mpf(p - 1) / (4 * mpmath.pi)))
        for a, b in zip(z.coords, w.coords):
            total += p * mpmath.log(2j / (mpmath.mpc(a) - mpmath.conj(mpmath.mpc(b))))
        return total
    total = z.n * math.log((p - 1) / (4 * math.pi)) + 0j
    for a, b in zip(z.coords, w.coords):
        total += p * cmath.log(2j / (a - b.conjugate()))
    return total


def _log_ball(z: DomainPoint, w: DomainPoint, p: int):
    n = z.n
    if precision.extended():
        s = 1 - mpmath.fsum(mpmath.mpc(a) * mpmath.conj(mpmath.mpc(b)) for a, b in zip(z.coords, w.coords))
        c = mpmath.log(mpmath.factorial(n)) - n * mpmath.log(mpmath.pi) + mpmath.log(mpmath.binomial(n + p, n))
        return c - p * mpmath.log(s)
    s = 1 - sum(a * b.conjugate() for a, b in zip(z.coords, w.coords))
    return math.log(ball_constant(n, p)) - p * cmath.log(s)


def _log_siegel(z: DomainPoint, w: DomainPoint, p: int, constant: float):
    M = (z.matrix() - w.matrix().conj()) / 2j
    sign, ld = np.linalg.slogdet(M)
    return math.log(constant) - p * (ld + cmath.log(sign))


def bergman_kernel(z: DomainPoint, w: DomainPoint, p, constant: float | None = None) -> KernelValue:
    """Bergman kernel of L^p at (z, w) for H^n, Siegel space or the ball.

    ``constant`` overrides the Siegel normalisation (see :func:`siegel_constant`).
    Fock points are delegated to :func:`fock_kernel` with the square lattice.
    """
    require_same(z, w)
    if z.kind == "fock":
        return fock_kernel(z, w, p)
    p = check_weight(z.kind, z.n, p)
    if z.kind == "halfplane":
        log = _log_halfplane(z, w, p)
    elif z.kind == "ball":
        log = _log_ball(z, w, p)
    else:
        c = siegel_constant(z.n, p) if constant is None else constant
        if c <= 0:
            raise ValueError("Siegel normalisation must be positive")
        log = _log_siegel(z, w, p, c)
    return KernelValue(LogComplex.from_log(log), p, z.kind, z.n)


def fock_kernel(z: DomainPoint, w: DomainPoint, p, area: float = 1.0) -> KernelValue:
    """``(p/area) exp(pi p z conj(w) / area)``, reproducing for ``exp(-pi p |z|^2/area) dA``."""
    require_same(z, w)
    p = check_weight("fock", 1, p)
    a, b = z.coords[0], w.coords[0]
    if precision.extended():
        log = mpmath.log(mpmath.mpf(p) / area) + mpmath.pi * p * mpmath.mpc(a) * mpmath.conj(mpmath.mpc(b)) / area
    else:
        log = math.log(p / area) + math.pi * p * a * b.conjugate() / area
    return KernelValue(LogComplex.from_log(log), p, "fock", 1)


def kernel_density(z: DomainPoint, p, area: float = 1.0) -> float:
    """``K(z, z) |sigma_z|^{2p}``; constant on homogeneous domains."""
    k = fock_kernel(z, z, p, area) if z.kind == "fock" else bergman_kernel(z, z, p)
    return math.exp(k.pointwise_log_norm(z, z, area))
