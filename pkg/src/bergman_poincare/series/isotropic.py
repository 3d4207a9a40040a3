"""Isotropic states along closed geodesics and at points, and their norms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..domains.kernels import halfplane_constant, kernel_density
from ..domains.points import DomainPoint
from ..domains.transport import holonomy
from ..groups.elements import GroupElement
from ..groups.enumeration import word_ball
from ..groups.geodesics import ClosedGeodesic, geodesic_from
from ..groups.presets import GroupPreset
from ..numerics.quadrature import QuadratureResult, adaptive_integrate
from ..numerics.summation import logsumexp_complex
from . import terms
from .poincare import averaged_kernel, point_series, sign_policy
from .relative import coset_set, relative_series_hyperbolic
from .truncated import TruncatedSum

HOLONOMY_GATE = 1e-6


class BohrSommerfeldError(ValueError):
    """The flat section does not close up around the loop."""


class InconsistencyError(ArithmeticError):
    """A norm that must be nonnegative came out negative: the series is under-converged."""


def _geodesic(g0) -> ClosedGeodesic:
    return g0 if isinstance(g0, ClosedGeodesic) else geodesic_from(g0)


def check_bohr_sommerfeld(geo: ClosedGeodesic, power: int, gate: float = HOLONOMY_GATE) -> complex:
    """Transport around the loop; raise unless the holonomy is 1 within ``gate``."""
    hol, state = holonomy(geo, power)
    if not state.converged or abs(hol - 1) > gate:
        raise BohrSommerfeldError(f"holonomy {hol:.3g} deviates from 1 by {abs(hol - 1):.3g}")
    return hol


class AveragedKernelOnAxis:
    """``A(z, gamma(t))`` for the averaged kernel, vectorised over axis nodes t."""

    def __init__(self, preset: GroupPreset, geo: ClosedGeodesic, k: int, depth: int):
        policy = sign_policy(preset, k)
        if policy.cancelled:
            raise BohrSommerfeldError("the averaged kernel vanishes identically at this weight")
        ball = word_ball(preset, depth, policy.projective)
        self.a, self.b, self.c, self.d = ball.batch().sl2_factors()
        # the image group in PSL2 carries the reproducing kernel of the quotient, so no factor here
        self.log_const = math.log(halfplane_constant(1, k))
        self.k = k
        self.geo = geo

    def __call__(self, z: complex, ws: np.ndarray) -> np.ndarray:
        zz = np.array([complex(z)])
        out = np.empty(len(ws), dtype=complex)
        for i, w in enumerate(ws):
            L = terms.halfplane_point_terms(self.a, self.b, self.c, self.d, zz, np.array([np.conj(w)]), self.k)
            s = logsumexp_complex(L)
            out[i] = complex(s.log_mag + self.log_const, s.arg)
        return out  # complex logs


def isotropic_quadrature(preset: GroupPreset, g0, p: int, z: DomainPoint, depth: int, tol: float = 1e-10,
                         kernel: AveragedKernelOnAxis | None = None) -> QuadratureResult:
    """``s(z) = int_0^length A(z, gamma(t)) a(t) y(t)^{2p} dt`` with a flat unit section a.

    ``p`` is the power of dz (the section has weight 2p).  ``tol`` is relative.
    """
    geo = _geodesic(g0)
    k = 2 * int(p)
    check_bohr_sommerfeld(geo, k)
    A = kernel or AveragedKernelOnAxis(preset, geo, k, depth)
    zc = complex(z.coords[0])

    def integrand(t):
        t = np.asarray(t, dtype=float)
        gam, a = geo.flat_sections(t, k)
        logs = A(zc, gam) + np.log(a) + k * np.log(gam.imag)
        return np.exp(logs)

    # scale the absolute tolerance by a coarse estimate of the integral's size
    ts = np.linspace(0, geo.length, 33)
    scale = float(np.max(np.abs(integrand(ts)))) * geo.length
    res = adaptive_integrate(integrand, (0.0, geo.length), tol * max(scale, 1e-300), order=10, min_depth=1)
    return res


def isotropic_state_quadrature(preset: GroupPreset, g0, p: int, z: DomainPoint, depth: int,
                               tol: float = 1e-10) -> complex:
    """Value at z of the isotropic state of the closed geodesic, by quadrature."""
    return complex(isotropic_quadrature(preset, g0, p, z, depth, tol).value)


@dataclass(frozen=True)
class ConstantFit:
    """Least-squares ratio ``C`` with ``quadrature ~ C * series`` at sample points."""

    constant: complex
    spread: float
    ratios: np.ndarray


def fit_constant(numerators, denominators) -> ConstantFit:
    q = np.asarray(numerators, dtype=complex)
    r = np.asarray(denominators, dtype=complex)
    C = complex(np.vdot(r, q) / np.vdot(r, r))
    ratios = q / r
    spread = float(np.max(np.abs(ratios - C)) / abs(C))
    return ConstantFit(C, spread, ratios)


def katok_constant(preset: GroupPreset, g0, p: int, points, kernel_depth: int = 16, series_depth: int = 16,
                   tol: float = 1e-10) -> ConstantFit:
    """Fit the constant relating the quadrature state to the closed-form relative series."""
    geo = _geodesic(g0)
    A = AveragedKernelOnAxis(preset, geo, 2 * int(p), kernel_depth)
    cs = coset_set(preset, geo.g0, series_depth)
    q = [isotropic_quadrature(preset, geo, p, z, kernel_depth, tol, A).value for z in points]
    r = [complex(relative_series_hyperbolic(preset, geo.g0, p, z, series_depth, cosets=cs)) for z in points]
    return ConstantFit(*fit_constant(q, r).__dict__.values())


@dataclass
class IsotropicState:
    """A holomorphic section attached to a point or a closed geodesic.

    ``evaluator(z)`` returns the section value as a :class:`TruncatedSum` (in
    the sigma^weight trivialisation) and ``constant`` multiplies it.
    """

    p: int
    weight: int
    support: object  # ClosedGeodesic or DomainPoint
    evaluator: Callable[[DomainPoint], TruncatedSum]
    constant: complex = 1.0
    info: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "geodesic" if isinstance(self.support, ClosedGeodesic) else "point"

    def value(self, z: DomainPoint) -> complex:
        return self.constant * complex(self.evaluator(z))


def point_state(preset: GroupPreset, p: int, w: DomainPoint, depth: int) -> IsotropicState:
    """The state of the point w: the averaged kernel ``P_p(., w)``."""
    return IsotropicState(p, p, w, lambda z: averaged_kernel(preset, p, z, w, depth), 1.0, {"depth": depth})


def geodesic_state(preset: GroupPreset, g0, p: int, depth: int = 16, fit_points=None,
                   kernel_depth: int = 16, tol: float = 1e-10) -> IsotropicState:
    """The state of the closed geodesic of g0 as ``C_p`` times the relative series.

    ``C_p`` relates the relative series to the kernel integral along the loop
    and is fitted at ``fit_points`` (three points near the axis by default).
    """
    geo = _geodesic(g0)
    if fit_points is None:
        fit_points = [DomainPoint.halfplane(complex(geo.position(t)[0]) * (1 + 0.05j))
                      for t in (0.2 * geo.length, 0.5 * geo.length, 0.8 * geo.length)]
    fit = katok_constant(preset, geo, p, fit_points, kernel_depth, depth, tol)
    cs = coset_set(preset, geo.g0, depth)
    ev = lambda z: relative_series_hyperbolic(preset, geo.g0, p, z, depth, cosets=cs)
    return IsotropicState(p, 2 * int(p), geo, ev, fit.constant, {"fit": fit, "depth": depth})


def geodesic_norm_squared(state: IsotropicState, tol: float = 1e-10) -> float:
    """``||s||^2`` by the period formula: the integral of <s, zeta> along the support.

    For a point state this is the diagonal kernel value.
    """
    if state.kind == "point":
        w = state.support
        v = state.value(w)
        val = v.real
        if val < -tol * abs(v):
            raise InconsistencyError(f"negative diagonal value {v}")
        return max(val, 0.0)
    geo: ClosedGeodesic = state.support
    k = state.weight

    def integrand(t):
        gam, a = geo.flat_sections(np.asarray(t, dtype=float), k)
        vals = np.array([state.value(DomainPoint.halfplane(g)) for g in gam])
        return vals * np.conj(a) * gam.imag ** k

    ts = np.linspace(0, geo.length, 17)
    scale = float(np.max(np.abs(integrand(ts)))) * geo.length
    res = adaptive_integrate(integrand, (0.0, geo.length), tol * max(scale, 1e-300), order=10, min_depth=1)
    v = complex(res.value)
    if v.real < -max(res.error_estimate, tol * abs(v)) or abs(v.imag) > 1e-6 * abs(v) + res.error_estimate:
        raise InconsistencyError(f"period integral {v} is not a nonnegative real")
    return max(v.real, 0.0)


def point_density(p: int, w: DomainPoint | None = None) -> float:
    """``K(w, w) h(w)^p`` on H: the point-state norm times the h-factor."""
    w = w or DomainPoint.halfplane(1j)
    return kernel_density(w, p)
