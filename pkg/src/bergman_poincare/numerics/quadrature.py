"""Adaptive quadrature by nested dyadic refinement.

Each cell carries its Gauss-Legendre value.  A cell is tested by evaluating
its children (2 for intervals, 4 for rectangles); the difference between the
children's sum and the parent value is the cell's error estimate.  The
estimate describes the coarser rule, so it is conservative for the returned
(finer) value.  Cells that fail are split and refined in the next sweep;
every sweep is one batched call of the integrand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool = True
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error estimate must be nonnegative")


@dataclass(frozen=True)
class Interval:
    a: float
    b: float


@dataclass(frozen=True)
class Rectangle:
    x0: float
    x1: float
    y0: float
    y1: float


@dataclass(frozen=True)
class VerticalRegion:
    """``{(x, y): x0 <= x <= x1, lower(x) <= y <= upper(x)}``; bounds vectorised."""

    x0: float
    x1: float
    lower: Callable
    upper: Callable


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    if n not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = ((x + 1.0) / 2.0, w / 2.0)
    return _GL_CACHE[n]


def _as_result_value(v):
    v = complex(v)
    return v if v.imag != 0.0 else v.real


def _integrate_1d(f, a, b, tol, order, max_evals, min_depth):
    x, w = gauss_legendre(order)

    def rule(lo, hi):
        # lo, hi: arrays of cell bounds -> array of GL values
        h = hi - lo
        pts = lo[:, None] + h[:, None] * x[None, :]
        vals = np.asarray(f(pts.ravel()), dtype=complex).reshape(pts.shape)
        return (vals * w[None, :]).sum(axis=1) * h

    lo = np.array([float(a)])
    hi = np.array([float(b)])
    width = float(b) - float(a)
    if width == 0.0:
        return QuadratureResult(0.0, 0.0, 0)
    val = rule(lo, hi)
    evals = order
    total = []
    errs = []
    level = 0
    converged = True
    while lo.size:
        mid = 0.5 * (lo + hi)
        left = rule(lo, mid)
        right = rule(mid, hi)
        evals += 2 * order * lo.size
        fine = left + right
        err = np.abs(fine - val)
        share = tol * np.abs(hi - lo) / abs(width)
        ok = (err <= share) & (level >= min_depth)
        total.append(fine[ok])
        errs.append(err[ok])
        keep = ~ok
        if evals > max_evals and keep.any():
            total.append(fine[keep])
            errs.append(err[keep])
            converged = False
            break
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        val = np.concatenate([left[keep], right[keep]])
        level += 1
    value = math.fsum(np.concatenate(total).real) + 1j * math.fsum(np.concatenate(total).imag)
    error = math.fsum(np.concatenate(errs))
    return QuadratureResult(_as_result_value(value), error, evals, converged, {"levels": level})


def _integrate_2d(f, rect, tol, order, max_evals, min_depth):
    x, w = gauss_legendre(order)
    X, Y = np.meshgrid(x, x, indexing="ij")
    W = np.outer(w, w)
    area = abs((rect.x1 - rect.x0) * (rect.y1 - rect.y0))

    def rule(x0, x1, y0, y1):
        hx = x1 - x0
        hy = y1 - y0
        px = x0[:, None, None] + hx[:, None, None] * X[None]
        py = y0[:, None, None] + hy[:, None, None] * Y[None]
        vals = np.asarray(f(px.ravel(), py.ravel()), dtype=complex).reshape(px.shape)
        return (vals * W[None]).sum(axis=(1, 2)) * hx * hy

    x0 = np.array([float(rect.x0)])
    x1 = np.array([float(rect.x1)])
    y0 = np.array([float(rect.y0)])
    y1 = np.array([float(rect.y1)])
    if area == 0.0:
        return QuadratureResult(0.0, 0.0, 0)
    val = rule(x0, x1, y0, y1)
    evals = order * order
    total, errs = [], []
    level = 0
    converged = True
    while x0.size:
        xm = 0.5 * (x0 + x1)
        ym = 0.5 * (y0 + y1)
        kids = [
            (x0, xm, y0, ym),
            (xm, x1, y0, ym),
            (x0, xm, ym, y1),
            (xm, x1, ym, y1),
        ]
        kv = [rule(*k) for k in kids]
        evals += 4 * order * order * x0.size
        fine = kv[0] + kv[1] + kv[2] + kv[3]
        err = np.abs(fine - val)
        share = tol * np.abs((x1 - x0) * (y1 - y0)) / area
        ok = (err <= share) & (level >= min_depth)
        total.append(fine[ok])
        errs.append(err[ok])
        keep = ~ok
        if evals > max_evals and keep.any():
            total.append(fine[keep])
            errs.append(err[keep])
            converged = False
            break
        x0 = np.concatenate([k[0][keep] for k in kids])
        x1 = np.concatenate([k[1][keep] for k in kids])
        y0 = np.concatenate([k[2][keep] for k in kids])
        y1 = np.concatenate([k[3][keep] for k in kids])
        val = np.concatenate([v[keep] for v in kv])
        level += 1
    tot = np.concatenate(total)
    value = math.fsum(tot.real) + 1j * math.fsum(tot.imag)
    error = math.fsum(np.concatenate(errs))
    return QuadratureResult(_as_result_value(value), error, evals, converged, {"levels": level})


def adaptive_integrate(f, region, tol: float = 1e-10, *, order: int = 8,
                       max_evals: int = 2_000_000, min_depth: int = 0) -> QuadratureResult:
    """Integrate a vectorised ``f`` over ``region``.

    ``region`` is a ``(a, b)`` pair or :class:`Interval` (``f(x)``), a
    :class:`Rectangle` (``f(x, y)``), or a :class:`VerticalRegion`
    (``f(x, y)``, mapped to the unit square).  When the evaluation budget is
    exhausted the best value is returned with ``converged=False``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if isinstance(region, tuple) and len(region) == 2:
        region = Interval(*region)
    if isinstance(region, Interval):
        return _integrate_1d(f, region.a, region.b, tol, order, max_evals, min_depth)
    if isinstance(region, Rectangle):
        return _integrate_2d(f, region, tol, order, max_evals, min_depth)
    if isinstance(region, VerticalRegion):
        lower, upper = region.lower, region.upper

        def g(x, s):
            lo = np.asarray(lower(x), dtype=float)
            hi = np.asarray(upper(x), dtype=float)
            return f(x, lo + (hi - lo) * s) * (hi - lo)

        rect = Rectangle(region.x0, region.x1, 0.0, 1.0)
        return _integrate_2d(g, rect, tol, order, max_evals, min_depth)
    raise TypeError(f"unsupported region {region!r}")


def integrate_fundamental_domain(f, tol: float = 1e-9, *, y_cut: float = 2.0,
                                 max_strips: int = 60, order: int = 8,
                                 max_evals: int = 4_000_000) -> QuadratureResult:
    """Integrate ``f(x, y)`` over the standard SL2(Z) fundamental domain.

    The compact part ``|x| <= 1/2, sqrt(1 - x^2) <= y <= Y`` is integrated
    directly; the cusp is covered by strips ``[Y, 2Y], [2Y, 4Y], ...`` until
    the last strip contributes less than ``tol / 10``.  The remaining tail is
    extrapolated from the ratio of the last two strips and folded into the
    value and the error estimate.
    """
    body = adaptive_integrate(
        f,
        VerticalRegion(-0.5, 0.5, lambda x: np.sqrt(1.0 - x * x), lambda x: np.full_like(x, y_cut)),
        tol / 4,
        order=order,
        max_evals=max_evals,
    )
    value = complex(body.value)
    error = body.error_estimate
    evals = body.evaluations
    converged = body.converged
    strips = []
    y0 = y_cut
    for _ in range(max_strips):
        r = adaptive_integrate(f, Rectangle(-0.5, 0.5, y0, 2 * y0), tol / 40, order=order,
                               max_evals=max_evals)
        strips.append(complex(r.value))
        value += strips[-1]
        error += r.error_estimate
        evals += r.evaluations
        converged &= r.converged
        y0 *= 2
        if abs(strips[-1]) < tol / 10 and len(strips) >= 2:
            break
    else:
        converged = False
    tail = 0j
    if len(strips) >= 2 and strips[-2] != 0:
        rho = abs(strips[-1] / strips[-2])
        if rho < 1:
            tail = strips[-1] * rho / (1 - rho)
        else:
            converged = False
    value += tail
    error += abs(tail)
    return QuadratureResult(_as_result_value(value), error, evals, converged,
                            {"strips": len(strips), "y_max": y0, "tail": tail})
