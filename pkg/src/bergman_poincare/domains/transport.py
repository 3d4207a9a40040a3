"""Chern-connection transport of sections of L^p along curves."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .points import DomainPoint, _sym_from_upper, canonical_power, log_h

DEFAULT_STEPS = 4096


@dataclass(frozen=True)
class Curve:
    """A smooth path ``t -> position(t)`` on ``[t0, t1]`` in one domain.

    ``position`` and ``velocity`` return coordinate vectors in the layout of
    :class:`DomainPoint`.
    """

    kind: str
    n: int
    position: Callable[[float], np.ndarray]
    velocity: Callable[[float], np.ndarray]
    t0: float = 0.0
    t1: float = 1.0
    area: float = 1.0

    def point(self, t: float) -> DomainPoint:
        return DomainPoint(self.kind, self.n, tuple(np.atleast_1d(self.position(t))))


def constant_curve(z: DomainPoint, t0: float = 0.0, t1: float = 1.0) -> Curve:
    c = np.array(z.coords, dtype=complex)
    return Curve(z.kind, z.n, lambda t: c, lambda t: np.zeros_like(c), t0, t1)


@dataclass(frozen=True)
class TransportState:
    """Coefficient ``a`` of ``a * sigma^p`` at curve parameter ``t``."""

    a: complex
    t: float = 0.0
    error_estimate: float = 0.0
    converged: bool = True
    steps: int = 0

    def log_norm(self, curve: Curve, power: int) -> float:
        """log of ``|a| h^{power/2}`` at the current point."""
        return math.log(abs(self.a)) + 0.5 * power * log_h(curve.point(self.t), curve.area)


def connection_form(kind: str, n: int, z: np.ndarray, v: np.ndarray, area: float = 1.0) -> complex:
    """``(d log h)^{1,0}`` applied to the tangent vector v at z."""
    if kind == "halfplane":
        return complex(np.sum(v / (2j * z.imag)))
    if kind == "ball":
        return complex(-np.vdot(z, v) / (1.0 - np.vdot(z, z).real))
    if kind == "siegel":
        Y = _sym_from_upper(n, z).imag
        V = _sym_from_upper(n, v)
        return complex(np.trace(np.linalg.solve(Y, V)) / 2j)
    if kind == "fock":
        return complex(-math.pi / area * np.conj(z[0]) * v[0])
    raise ValueError(f"unknown domain kind {kind!r}")


def bundle_power(kind: str, n: int, p: int, bundle="L") -> int:
    """Tensor power of L carried by ``bundle``: ``"L"`` gives L^p, ``"K"`` gives K^p."""
    if bundle == "L":
        return int(p)
    if bundle == "K":
        return int(p) * canonical_power(kind, n)
    raise ValueError(f"unknown bundle tag {bundle!r}")


def _rk4(curve: Curve, power: int, a0: complex, t0: float, t1: float, steps: int) -> complex:
    h = (t1 - t0) / steps
    ts = t0 + h * np.arange(2 * steps + 1) / 2.0
    theta = np.array([connection_form(curve.kind, curve.n, np.atleast_1d(curve.position(t)),
                                      np.atleast_1d(curve.velocity(t)), curve.area) for t in ts])
    f = -power * theta
    a = complex(a0)
    for k in range(steps):
        f0, fm, f1 = f[2 * k], f[2 * k + 1], f[2 * k + 2]
        k1 = f0 * a
        k2 = fm * (a + 0.5 * h * k1)
        k3 = fm * (a + 0.5 * h * k2)
        k4 = f1 * (a + h * k3)
        a += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return a


def parallel_transport(curve: Curve, p: int, initial: TransportState | complex = 1.0, bundle="L",
                       t1: float | None = None, steps: int = DEFAULT_STEPS, rtol: float = 1e-10,
                       max_steps: int = 2 ** 20) -> TransportState:
    """Solve ``a' + power * theta(gamma') a = 0`` from ``initial.t`` to ``t1``.

    Classical RK4 with ``steps`` steps; a second run at half the steps gives a
    Richardson error estimate.  The step count doubles until the estimate is
    below ``rtol`` relative, or ``max_steps`` is hit (then ``converged`` is False).
    """
    if not isinstance(initial, TransportState):
        initial = TransportState(complex(initial), curve.t0)
    t1 = curve.t1 if t1 is None else t1
    t0 = initial.t
    power = bundle_power(curve.kind, curve.n, p, bundle)
    if t1 == t0 or initial.a == 0:
        return replace(initial, t=t1)
    steps = max(2, int(steps) + int(steps) % 2)
    coarse = _rk4(curve, power, initial.a, t0, t1, steps // 2)
    while True:
        fine = _rk4(curve, power, initial.a, t0, t1, steps)
        err = abs(fine - coarse) / 15.0
        ok = err <= rtol * abs(fine)
        h = abs(t1 - t0) / steps
        if ok or 2 * steps > max_steps or h <= 4 * np.finfo(float).eps * max(abs(t0), abs(t1), 1.0):
            return TransportState(fine, t1, float(err), bool(ok), steps)
        coarse, steps = fine, 2 * steps


def holonomy(geodesic, p: int, bundle="L", steps: int = DEFAULT_STEPS) -> tuple[complex, TransportState]:
    """Holonomy of L^p around the closed geodesic of ``geodesic.g0``.

    Transports 1 over one period and compares against the fibre identification
    given by the automorphy factor of ``g0`` at the start point.  Returns the
    holonomy and the final transport state.
    """
    from .actions import cocycle

    curve = geodesic.curve()
    state = parallel_transport(curve, p, TransportState(1.0 + 0j, curve.t0), bundle=bundle, steps=steps)
    power = bundle_power(curve.kind, curve.n, p, bundle)
    j = cocycle(geodesic.g0, curve.point(curve.t0)).value ** power
    return complex(state.a / j.to_complex()), state
