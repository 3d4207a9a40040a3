"""Relative Poincare series over the cosets <g0> \\ Gamma."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..domains.points import DomainPoint
from ..groups.cosets import CosetReducer
from ..groups.elements import ElementBatch, GroupElement
from ..groups.enumeration import _unique_rows, word_ball
from ..groups.geodesics import ClosedGeodesic, NotLoxodromicError, geodesic_from
from ..groups.presets import GroupPreset
from . import terms
from .engine import map_chunks
from .poincare import _check_point, sign_policy
from .truncated import TruncatedSum, cancelled_sum, sum_from_logs


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class CosetSet:
    """Coset representatives met by a word ball, grouped by the shortest word reaching them."""

    reps: ElementBatch
    offsets: np.ndarray
    factor: int
    exhausted: bool
    reducer: CosetReducer

    def __len__(self) -> int:
        return len(self.reps)


_COSETS: dict[tuple, CosetSet] = {}


def coset_set(preset: GroupPreset, g0: GroupElement, depth: int, base_point=None) -> CosetSet:
    # terms of relative series are even in g, so -I never cancels them
    policy = sign_policy(preset, 0)
    key = (preset.to_json(), g0.key(), depth, None if base_point is None else tuple(np.ravel(base_point)))
    if key in _COSETS:
        return _COSETS[key]
    ball = word_ball(preset, depth, policy.projective)
    reducer = CosetReducer(g0, base_point, policy.projective)
    reps = reducer.reduce_batch(ball.batch())
    _, first = _unique_rows(reps.keys())
    first = np.sort(first)  # order of first appearance: word length, then enumeration order
    lengths = ball.word_lengths()[first]
    offsets = np.searchsorted(lengths, np.arange(depth + 2), side="left").astype(np.int64)
    cs = CosetSet(reps.subset(first), offsets, policy.factor, not preset.generators or ball.shell_sizes()[-1] == 0,
                  reducer)
    if len(_COSETS) > 16:
        _COSETS.clear()
    _COSETS[key] = cs
    return cs


def clear_cache() -> None:
    _COSETS.clear()
    _REVERSERS.clear()


def katok_logq(cs: CosetSet, z: complex, workers=None) -> np.ndarray:
    """log of ``j(g,z)^2 (c0 (gz)^2 + (d0 - a0) gz - b0)`` for each coset representative."""
    a, b, c, d = (x[:, 0] for x in cs.reps.sl2_factors())
    (a0, b0), (c0, d0) = cs.reducer.g0.embedding(0)
    return map_chunks(lambda lo, hi: terms.katok_logq(a[lo:hi], b[lo:hi], c[lo:hi], d[lo:hi], complex(z),
                                                      a0, b0, c0, d0), len(cs), workers=workers)


_REVERSERS: dict[tuple, GroupElement | None] = {}


def axis_reversing_element(preset: GroupPreset, g0: GroupElement, depth: int = 6) -> GroupElement | None:
    """An element h of the word ball with ``h g0 h^-1 = g0^-1``, or None.

    Such an h maps the axis of g0 onto itself with the orientation reversed.
    It permutes the cosets and multiplies every summand of the relative series
    by (-1)^p, so odd p gives an identically zero series.
    """
    key = (preset.to_json(), g0.key(), depth)
    if key not in _REVERSERS:
        inv = g0.inverse()
        found = None
        for h in word_ball(preset, depth, sign_policy(preset, 0).projective).batch():
            if h @ g0 == inv @ h:
                found = h
                break
        _REVERSERS[key] = found
    return _REVERSERS[key]


def relative_series_hyperbolic(preset: GroupPreset, g0: GroupElement, p: int, z: DomainPoint, depth: int,
                               workers=None, base_point=None, cosets: CosetSet | None = None) -> TruncatedSum:
    """``sum_{<g0>\\Gamma} j(g,z)^{-2p} (c0 (gz)^2 + (d0 - a0) gz - b0)^{-p}``, a form of weight 2p."""
    if preset.group != "SL2" or preset.n != 1:
        raise PreconditionError("the hyperbolic relative series lives on H")
    _check_point(preset, z)
    if int(p) != p or p < 2:
        raise PreconditionError("the relative series needs an integer p >= 2 (weight 2p)")
    geodesic_from(g0)
    if p % 2 and axis_reversing_element(preset, g0) is not None:
        s = cancelled_sum(depth, "an element of the group reverses the axis of g0; odd p cancels")
        s.info["weight"] = 2 * int(p)
        return s
    cs = cosets or coset_set(preset, g0, depth, base_point)
    L = -int(p) * katok_logq(cs, z.coords[0], workers)
    return sum_from_logs(L, cs.offsets, math.log(cs.factor), cs.exhausted,
                         {"cosets": len(cs), "weight": 2 * int(p)}, exponent=int(p))


def _require_real_endpoints(geo: ClosedGeodesic) -> None:
    for v in (geo.X, geo.Y):
        aff = v[:-1] / v[-1]
        if np.max(np.abs(aff.imag)) > 1e-9:
            raise PreconditionError("axis endpoints are not real; the Bohr-Sommerfeld hypothesis fails")


def ball_pair_logs(cs: CosetSet, z: DomainPoint, vectors, workers=None) -> np.ndarray:
    M = np.ascontiguousarray(cs.reps.embedding(), dtype=complex)
    zt = np.append(np.array(z.coords, dtype=complex), 1.0)
    V = np.ascontiguousarray(np.array(vectors, dtype=complex))
    return map_chunks(lambda lo, hi: terms.ball_pairings(M[lo:hi], zt, V), len(cs), (V.shape[0],),
                      workers=workers)


def relative_series_loxodromic(preset: GroupPreset, g0, p: int, z: DomainPoint, depth: int, workers=None,
                               base_point=None) -> TruncatedSum:
    """``sum (Q(g zt, X) Q(g zt, Y))^{-(n+1)p}`` over cosets, X, Y the axis endpoints.

    In affine terms each summand is ``J(g,z)^{-2(n+1)p} ((1-<gz,x>)(1-<gz,y>))^{-(n+1)p}``
    up to a constant; the weight is 2(n+1)p.
    """
    if preset.group != "SU":
        raise PreconditionError("the loxodromic relative series lives on the ball")
    _check_point(preset, z)
    geo = g0 if isinstance(g0, ClosedGeodesic) else geodesic_from(g0)
    _require_real_endpoints(geo)
    n = preset.n
    cs = coset_set(preset, geo.g0, depth, base_point)
    Lq = ball_pair_logs(cs, z, [geo.X, geo.Y], workers)
    L = -(n + 1) * int(p) * (Lq[:, 0] + Lq[:, 1])
    return sum_from_logs(L, cs.offsets, math.log(cs.factor), cs.exhausted,
                         {"cosets": len(cs), "weight": 2 * (n + 1) * int(p)}, exponent=2 * (n + 1) * int(p))


def unit_eigenvector(geo: ClosedGeodesic) -> np.ndarray:
    w = np.array(geo.eigenvalues)
    ones = [i for i in range(len(w)) if abs(w[i] - 1) < 1e-8]
    if not ones or not geo.others:
        raise NotLoxodromicError("g0 has no eigenvector with eigenvalue 1")
    M = geo.g0.embedding()
    for V in geo.others:
        if np.linalg.norm(M @ V - V) < 1e-8 * np.linalg.norm(V):
            return V
    raise NotLoxodromicError("g0 has no eigenvector with eigenvalue 1")


def relative_series_torus(preset: GroupPreset, g0, l: int, p: int, z: DomainPoint, depth: int, workers=None,
                          base_point=None) -> TruncatedSum:
    """``sum Q(g zt, V)^{2l} / (Q(g zt, X) Q(g zt, Y))^{3p+l}`` over cosets, on the 2-ball.

    The summand is homogeneous of degree -6p, so the series has weight 6p.
    """
    if preset.group != "SU" or preset.n != 2:
        raise PreconditionError("the torus series lives on the 2-ball")
    if l < 1:
        raise PreconditionError("l must be >= 1")
    _check_point(preset, z)
    geo = g0 if isinstance(g0, ClosedGeodesic) else geodesic_from(g0)
    _require_real_endpoints(geo)
    V = unit_eigenvector(geo)
    cs = coset_set(preset, geo.g0, depth, base_point)
    Lq = ball_pair_logs(cs, z, [geo.X, geo.Y, V], workers)
    L = 2 * int(l) * Lq[:, 2] - (3 * int(p) + int(l)) * (Lq[:, 0] + Lq[:, 1])
    return sum_from_logs(L, cs.offsets, math.log(cs.factor), cs.exhausted,
                         {"cosets": len(cs), "weight": 6 * int(p)}, exponent=6 * int(p) + 4 * int(l))
