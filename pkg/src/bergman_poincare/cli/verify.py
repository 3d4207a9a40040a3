"""Verification suites: each returns a list of :class:`Check` with measured residuals."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..domains import (DomainPoint, FockLattice, act, bergman_kernel, cocycle, fock_kernel, halfplane_constant,
                       holonomy, p_min)
from ..groups import count_lattice, element, fit_growth, geodesic_from, orbit_distances, random_word
from ..groups.counting import complete_radius
from ..numerics import Rectangle, adaptive_integrate
from ..numerics.logcomplex import LogComplex, expm1c, wrap_angle
from ..series import averaged_kernel, katok_constant, theta_basis_kernel

CHAIN_TOL = 1e-11
EQUIVARIANCE_TOL = 1e-10
THETA_TOL = 1e-8
REPRODUCING_TOL = 1e-4
PERIOD_TOL = 1e-3
HOLONOMY_TOL = 1e-8
SLOPE_RANGE = (0.8, 1.2)


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    passed: bool
    info: dict = field(default_factory=dict)


def _check(name, residual, tol, **info) -> Check:
    return Check(name, float(residual), float(tol), bool(residual < tol), info)


def log_ratio_residual(a: LogComplex, b: LogComplex) -> float:
    """|a / b - 1| computed from the logarithms."""
    d = complex(a.log_mag - b.log_mag, wrap_angle(a.arg - b.arg))
    return abs(expm1c(d))


def random_point(kind: str, n: int, rng: np.random.Generator, lattice: FockLattice | None = None) -> DomainPoint:
    if kind == "halfplane":
        return DomainPoint.halfplane(*[complex(rng.uniform(-1.5, 1.5), math.exp(rng.uniform(-1, 1)))
                                       for _ in range(n)])
    if kind == "siegel":
        X = rng.uniform(-1, 1, (n, n))
        A = rng.normal(size=(n, n))
        return DomainPoint.siegel((X + X.T) / 2 + 1j * (A @ A.T / n + 0.5 * np.eye(n)))
    if kind == "ball":
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        return DomainPoint.ball(*(v / np.linalg.norm(v) * rng.uniform(0, 0.85)))
    lat = lattice or FockLattice()
    return DomainPoint.fock(rng.uniform() + rng.uniform() * lat.tau)


def _random_element(group, rng, max_length):
    if isinstance(group, FockLattice):
        m, n = rng.integers(-max_length, max_length + 1, 2)
        return group.translation(int(m), int(n))
    return random_word(group, int(rng.integers(0, max_length + 1)), rng)


def _domain(group):
    return ("fock", 1) if isinstance(group, FockLattice) else group.domain


def chain_rule(group, trials: int = 1000, seed: int = 0, max_length: int = 6) -> list[Check]:
    """``j(gh, z) = j(g, hz) j(h, z)`` for random words g, h and points z."""
    rng = np.random.default_rng(seed)
    kind, n = _domain(group)
    worst = 0.0
    for _ in range(trials):
        g, h = _random_element(group, rng, max_length), _random_element(group, rng, max_length)
        z = random_point(kind, n, rng, group if isinstance(group, FockLattice) else None)
        lhs = cocycle(g @ h, z).value
        rhs = cocycle(g, act(h, z)).value * cocycle(h, z).value
        worst = max(worst, log_ratio_residual(lhs, rhs))
    return [_check(f"chain rule ({getattr(group, 'name', 'fock')}, {trials} trials)", worst, CHAIN_TOL)]


def _kernel(z, w, p, area):
    return fock_kernel(z, w, p, area) if z.kind == "fock" else bergman_kernel(z, w, p)


def equivariance(group, p: int | None = None, trials: int = 200, seed: int = 0, radius: int = 6) -> list[Check]:
    """``K(gz, gw) = j(g,z)^p conj(j(g,w))^p K(z, w)`` for random g in the word ball of ``radius``."""
    rng = np.random.default_rng(seed)
    kind, n = _domain(group)
    p = 2 * p_min(kind, n) if p is None else p
    area = group.covolume if isinstance(group, FockLattice) else 1.0
    worst = 0.0
    for _ in range(trials):
        g = _random_element(group, rng, radius)
        z = random_point(kind, n, rng, group if isinstance(group, FockLattice) else None)
        w = random_point(kind, n, rng, group if isinstance(group, FockLattice) else None)
        lhs = _kernel(act(g, z), act(g, w), p, area).value
        rhs = _kernel(z, w, p, area).value * cocycle(g, z).power(p) * cocycle(g, w).power(p).conjugate()
        worst = max(worst, log_ratio_residual(lhs, rhs))
    return [_check(f"kernel equivariance ({kind}({n}), p={p}, {trials} trials)", worst, EQUIVARIANCE_TOL)]


def reproducing(p: int = 8, pairs: int = 5, seed: int = 0, box: float = 60.0, y_min: float = 1e-3,
                tol: float = 1e-9) -> list[Check]:
    """``int K(z,w) K(w,w0) y^p dx dy / y^2 = K(z, w0)`` on H, over a truncated region in (x, log y)."""
    rng = np.random.default_rng(seed)
    c = halfplane_constant(1, p)

    def K(z, w):
        return c * (2j / (z - np.conj(w))) ** p

    out = []
    for k in range(pairs):
        z = complex(rng.uniform(-1, 1), math.exp(rng.uniform(-0.5, 0.5)))
        w0 = complex(rng.uniform(-1, 1), math.exp(rng.uniform(-0.5, 0.5)))
        target = K(z, w0)

        def f(x, s):
            w = x + 1j * np.exp(s)
            return K(z, w) * K(w, w0) * np.exp(s * (p - 1))

        r = adaptive_integrate(f, Rectangle(-box, box, math.log(y_min), math.log(box)), tol * abs(target),
                               order=10)
        out.append(_check(f"reproducing integral p={p} pair {k}", abs(r.value - target) / abs(target),
                          REPRODUCING_TOL, evaluations=r.evaluations))
    return out


def theta(ps=(1, 2, 3, 4, 5, 6), trials: int = 50, seed: int = 0, tau: complex = 1j, radius: int = 8) -> list[Check]:
    """Lattice-averaged Fock kernel against the theta-basis kernel."""
    rng = np.random.default_rng(seed)
    lat = FockLattice(tau)
    out = []
    for p in ps:
        worst = 0.0
        for _ in range(trials):
            z, w = random_point("fock", 1, rng, lat), random_point("fock", 1, rng, lat)
            a = averaged_kernel(lat, p, z, w, radius).value
            b = theta_basis_kernel(lat, p, z, w).value
            worst = max(worst, log_ratio_residual(a, b))
        out.append(_check(f"theta average p={p}", worst, THETA_TOL))
    return out


def period(preset, g0, p: int = 6, points: int = 10, seed: int = 0, depth: int = 16) -> list[Check]:
    """Quadrature state along the loop over the closed-form relative series: one constant."""
    rng = np.random.default_rng(seed)
    pts = [DomainPoint.halfplane(complex(rng.uniform(-0.5, 0.5), rng.uniform(0.9, 1.8))) for _ in range(points)]
    fit = katok_constant(preset, g0, p, pts, depth, depth)
    return [_check(f"period constant p={p} over {points} points", fit.spread, PERIOD_TOL,
                   constant=fit.constant)]


def holonomy_check(preset, g0s, p: int = 6) -> list[Check]:
    out = []
    for rows in g0s:
        g0 = element(preset, rows)
        hol, _ = holonomy(geodesic_from(g0), p, "K")
        out.append(_check(f"holonomy of K^{p} along axis of {rows}", abs(hol - 1), HOLONOMY_TOL, holonomy=hol))
    return out


def stabilizer_count(z: DomainPoint, bound: int = 4) -> int:
    """Brute force over integer matrices with entries in [-bound, bound]: det 1 and g z = z."""
    x = complex(z.coords[0])
    r = np.arange(-bound, bound + 1)
    a, b, c, d = (m.ravel() for m in np.meshgrid(r, r, r, r, indexing="ij"))
    ok = (a * d - b * c == 1) & (np.abs(c * x * x + (d - a) * x - b) < 1e-9)
    return int(ok.sum())


def counting(preset, z: DomainPoint, depth: int = 22, r_range=(2.0, 8.0), projective: bool = False) -> list[Check]:
    d = orbit_distances(preset, z, z, depth, projective)
    n0 = count_lattice(preset, z, z, 0.0, depth, projective)
    out = []
    if preset.group == "SL2" and preset.n == 1 and preset.ring.kind == "Z":
        brute = stabilizer_count(z) // (2 if projective else 1)
        out.append(_check(f"N(0) = {n0} vs brute force {brute}", abs(n0 - brute), 0.5, count=n0))
    fit = fit_growth(d, *r_range)
    lo, hi = SLOPE_RANGE
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    out.append(_check(f"growth slope on [{r_range[0]}, {r_range[1]}] = {fit.rate:.4f}", abs(fit.rate - mid), half,
                      slope=fit.rate, complete_radius=complete_radius(preset, z, z, depth, projective)))
    return out
