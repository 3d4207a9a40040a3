"""Invariant distances on H^n, the ball and the Fock plane."""
from __future__ import annotations

import math

from .points import DomainPoint, UnsupportedDomainError, require_same


def _halfplane_factor(z: complex, w: complex) -> float:
    # 2 asinh(|z - w| / (2 sqrt(y y'))) is acosh(1 + |z-w|^2 / (2 y y')) without cancellation
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def _ball_distance(z: DomainPoint, w: DomainPoint) -> float:
    n = z.n
    zc, wc = z.coords, w.coords
    zw = sum(a * b.conjugate() for a, b in zip(zc, wc))
    diff = sum(abs(a - b) ** 2 for a, b in zip(zc, wc))
    # |1 - <z,w>|^2 - (1-|z|^2)(1-|w|^2) = |z-w|^2 - (|z|^2|w|^2 - |<z,w>|^2); the bracket is
    # the Lagrange sum over pairs, which vanishes exactly in dimension one
    lag = sum(abs(zc[j] * wc[k] - zc[k] * wc[j]) ** 2 for j in range(n) for k in range(j + 1, n))
    num = max(diff - lag, 0.0)
    rho = math.sqrt(num) / abs(1 - zw)
    return math.sqrt((n + 1) / 2.0) * 2.0 * math.atanh(min(rho, math.nextafter(1.0, 0.0)))


def hyperbolic_distance(z: DomainPoint, w: DomainPoint, area: float = 1.0) -> float:
    """Distance for the invariant metric of each domain.

    Factors of H^n combine in l^2 (product metric).  The ball uses the metric
    with holomorphic sectional curvature normalised so that B_1 matches H.  The
    Fock plane uses the flat metric of its Kahler form.
    """
    require_same(z, w)
    if z.kind == "halfplane":
        return math.sqrt(sum(_halfplane_factor(a, b) ** 2 for a, b in zip(z.coords, w.coords)))
    if z.kind == "ball":
        return _ball_distance(z, w)
    if z.kind == "fock":
        return math.sqrt(2 * math.pi / area) * abs(z.coords[0] - w.coords[0])
    raise UnsupportedDomainError("distance is not implemented on Siegel space")
