"""Element classification and closed geodesics of loxodromic elements."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .elements import GroupElement

CLASSES = ("identity", "elliptic", "parabolic", "hyperbolic")


class NotLoxodromicError(ValueError):
    pass


def classify(g: GroupElement, which: int = 0) -> str:
    """Trace classification of an SL2 element under ring embedding ``which``.

    Uses the exact trace when the ring is Z.
    """
    if g.group != "SL2":
        raise TypeError("classify expects an SL2 element")
    if g.ring.kind == "Z":
        t = abs(int(g.coeffs[0, 0, 0] + g.coeffs[1, 1, 0]))
        if t == 2 and (g.is_identity() or (-g).is_identity()):
            return "identity"
        return "elliptic" if t < 2 else ("parabolic" if t == 2 else "hyperbolic")
    t = abs(float(g.trace(which)))
    if abs(t - 2) < 1e-12:
        M = g.embedding(which)
        off = abs(M[0, 1]) + abs(M[1, 0]) + abs(M[0, 0] - M[1, 1])
        return "identity" if off < 1e-12 else "parabolic"
    return "elliptic" if t < 2 else "hyperbolic"


def _q(u: np.ndarray, v: np.ndarray) -> complex:
    """The Hermitian form |u_1|^2 + ... + |u_n|^2 - |u_0|^2, coordinates (u_1..u_n, u_0)."""
    return complex(np.sum(u[:-1] * np.conj(v[:-1])) - u[-1] * np.conj(v[-1]))


@dataclass(frozen=True)
class ClosedGeodesic:
    """Axis of a loxodromic ``g0``, parametrised by arclength.

    ``g0`` moves gamma(t) to gamma(t + length).  On H the axis runs from the
    repelling fixed point ``endpoints[0]`` to the attracting one ``endpoints[1]``.
    On the ball the homogeneous axis is ``e^{u} X + e^{-u} Y`` with
    ``Q(X, Y) = -1/2`` and ``t = c u``, ``c = sqrt(2(n+1))``.
    """

    g0: GroupElement
    kind: str
    n: int
    length: float
    endpoints: tuple
    eigenvalues: tuple
    # H: det-1 Mobius M sending the axis to the imaginary axis (repelling -> 0)
    normalizer: np.ndarray | None = field(default=None, repr=False)
    # ball: eigenvectors X (|eig| > 1), Y (|eig| < 1) and the remaining ones
    X: np.ndarray | None = field(default=None, repr=False)
    Y: np.ndarray | None = field(default=None, repr=False)
    others: tuple = field(default=(), repr=False)
    speed: float = 1.0

    # -- parametrisation -----------------------------------------------------------
    def homogeneous(self, t: float) -> np.ndarray:
        u = t / self.speed
        return math.exp(u) * self.X + math.exp(-u) * self.Y

    def position(self, t: float) -> np.ndarray:
        if self.kind == "halfplane":
            (a, b), (c, d) = self.normalizer
            w = 1j * math.exp(t)
            return np.array([(d * w - b) / (-c * w + a)])
        zt = self.homogeneous(t)
        return zt[:-1] / zt[-1]

    def velocity(self, t: float) -> np.ndarray:
        if self.kind == "halfplane":
            (a, b), (c, d) = self.normalizer
            w = 1j * math.exp(t)
            return np.array([w / (-c * w + a) ** 2])
        u = t / self.speed
        zt = self.homogeneous(t)
        dz = (math.exp(u) * self.X - math.exp(-u) * self.Y) / self.speed
        return (dz[:-1] * zt[-1] - zt[:-1] * dz[-1]) / zt[-1] ** 2

    def point(self, t: float):
        from ..domains.points import DomainPoint

        return DomainPoint(self.kind, self.n, tuple(self.position(t)))

    def curve(self, t0: float = 0.0, t1: float | None = None):
        from ..domains.transport import Curve

        return Curve(self.kind, self.n, self.position, self.velocity, t0, self.length if t1 is None else t1)

    def axis_parameter(self, z) -> float:
        """Arclength coordinate of the nearest-point projection of z onto the axis."""
        coords = np.asarray(z.coords if hasattr(z, "coords") else z, dtype=complex)
        if self.kind == "halfplane":
            (a, b), (c, d) = self.normalizer
            w = coords[0]
            return math.log(abs((a * w + b) / (c * w + d)))
        zt = np.append(coords, 1.0)
        return self.speed * 0.5 * math.log(abs(_q(zt, self.Y) / _q(zt, self.X)))

    def flat_section(self, t: float, k: int) -> complex:
        """Coefficient a(t) of the flat section of L^k along the axis with |a| y^{k/2} = 1 (H only).

        In the coordinate w = N z sending the axis to the imaginary axis the
        section is ``e^{-kt/2} j(N, gamma(t))^{-k}``.
        """
        if self.kind != "halfplane":
            raise NotImplementedError("closed-form flat section is implemented on H")
        (a, b), (c, d) = self.normalizer
        z = self.position(t)[0]
        return math.exp(-k * t / 2) * (c * z + d) ** (-k)

    def flat_sections(self, t: np.ndarray, k: int) -> np.ndarray:
        """Vectorised :meth:`flat_section` together with gamma(t): returns (gamma, a)."""
        (a, b), (c, d) = self.normalizer
        w = 1j * np.exp(t)
        z = (d * w - b) / (-c * w + a)
        return z, np.exp(-k * t / 2) * (c * z + d) ** (-k)


def _sl2_geodesic(g0: GroupElement) -> ClosedGeodesic:
    if g0.n != 1:
        raise NotLoxodromicError("closed geodesics are implemented for single-factor SL2")
    M = g0.embedding(0).astype(float)
    (a, b), (c, d) = M
    tr = a + d
    if abs(tr) <= 2:
        raise NotLoxodromicError(f"element with |trace| = {abs(tr):g} is not hyperbolic")
    lam = (abs(tr) + math.sqrt(tr * tr - 4)) / 2
    length = 2 * math.log(lam)
    if c != 0:
        disc = math.sqrt((d - a) ** 2 + 4 * b * c)
        r1, r2 = (-(d - a) + disc) / (2 * c), (-(d - a) - disc) / (2 * c)
        # attracting fixed point has |c x + d| > 1
        x2, x1 = (r1, r2) if abs(c * r1 + d) > 1 else (r2, r1)
        s = 1.0 if x2 > x1 else -1.0
        k = 1 / math.sqrt(abs(x2 - x1))
        N = np.array([[k, -k * x1], [-s * k, s * k * x2]])
        ends = (x1, x2)
    else:
        x = b / (d - a)
        if abs(d) < 1:  # infinity attracts
            N = np.array([[1.0, -x], [0.0, 1.0]])
            ends = (x, math.inf)
        else:
            N = np.array([[0.0, -1.0], [1.0, -x]])
            ends = (math.inf, x)
    eig = (math.copysign(lam, tr), math.copysign(1 / lam, tr))
    return ClosedGeodesic(g0, "halfplane", 1, length, ends, eig, normalizer=N)


def _su_geodesic(g0: GroupElement) -> ClosedGeodesic:
    M = g0.embedding()
    n = g0.n
    w, V = np.linalg.eig(M)
    mags = np.abs(w)
    i_big, i_small = int(np.argmax(mags)), int(np.argmin(mags))
    if not mags[i_big] > 1 + 1e-9:
        raise NotLoxodromicError("element has no eigenvalue off the unit circle")
    lam = w[i_big]
    if abs(lam.imag) > 1e-9 * abs(lam):
        raise NotLoxodromicError("loxodromic element must have real eigenvalues")
    X, Y = V[:, i_big].copy(), V[:, i_small].copy()
    if np.allclose(X.imag, 0, atol=1e-12) and np.allclose(Y.imag, 0, atol=1e-12):
        X, Y = X.real.astype(complex), Y.real.astype(complex)
    qxy = _q(X, Y)
    Y = Y * (-0.5 / np.conj(qxy))
    speed = math.sqrt(2 * (n + 1))
    length = speed * math.log(abs(lam))
    others = tuple(V[:, i].copy() for i in range(n + 1) if i not in (i_big, i_small))
    # boundary endpoints in affine coordinates
    ends = (tuple(Y[:-1] / Y[-1]), tuple(X[:-1] / X[-1]))
    return ClosedGeodesic(g0, "ball", n, length, ends, tuple(complex(v) for v in w), X=X, Y=Y,
                          others=others, speed=speed)


def geodesic_from(g0: GroupElement) -> ClosedGeodesic:
    """Closed geodesic of a hyperbolic SL2 element or a real loxodromic SU(n,1) element."""
    if g0.group == "SL2":
        return _sl2_geodesic(g0)
    if g0.group == "SU":
        return _su_geodesic(g0)
    raise NotLoxodromicError(f"closed geodesics are not implemented for {g0.group}")
