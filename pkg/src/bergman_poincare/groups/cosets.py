"""Canonical representatives of the cosets <g0> \\ Gamma."""
from __future__ import annotations

import cmath
import math

import numpy as np

from .elements import ElementBatch, GroupElement, sign_normalize
from .enumeration import _unique_rows
from .geodesics import ClosedGeodesic, NotLoxodromicError, geodesic_from

# Axis coordinate where the default base point sits, as a fraction of the period,
# and its angular offset from the axis.  Both are deliberately generic so that no
# orbit point of a symmetric configuration lands on a fundamental-interval edge.
_BASE_FRACTION = 0.3819660112501051
_BASE_ANGLE = 0.2913
TIE_TOLERANCE = 1e-9


def default_base_point(geo: ClosedGeodesic) -> np.ndarray:
    """A point off the axis whose projection lies inside [0, length)."""
    t = _BASE_FRACTION * geo.length
    if geo.kind == "halfplane":
        (a, b), (c, d) = geo.normalizer
        w = math.exp(t) * cmath.exp(1j * (math.pi / 2 - _BASE_ANGLE))
        return np.array([(d * w - b) / (-c * w + a)])
    u = t / geo.speed
    zt = math.exp(u) * geo.X + math.exp(-u) * geo.Y
    # push off the axis along a direction Q-orthogonal to X and Y
    if geo.others:
        V = geo.others[0]
        qvv = float(np.real(np.sum(np.abs(V[:-1]) ** 2) - abs(V[-1]) ** 2))
        if qvv > 0:
            zt = zt + math.tanh(_BASE_ANGLE) * V / math.sqrt(qvv)
    return zt[:-1] / zt[-1]


class CosetReducer:
    """Reduces elements to the representative of their coset under <g0>.

    The representative is the unique ``g0^k g`` that maps the base point to a
    point whose axis coordinate lies in ``[0, length)``.  When that coordinate
    falls within ``TIE_TOLERANCE`` of an interval edge, the two candidates are
    compared by exact key so that the choice is independent of the starting
    element.
    """

    def __init__(self, g0: GroupElement, base_point=None, projective: bool = False):
        self.geodesic = geodesic_from(g0)
        self.g0 = g0
        self.projective = projective
        self.base = default_base_point(self.geodesic) if base_point is None else np.asarray(
            getattr(base_point, "coords", base_point), dtype=complex)
        self._powers: dict[int, np.ndarray] = {0: GroupElement.identity(g0.ring, g0.group, g0.n).coeffs}

    # -- helpers ---------------------------------------------------------------------------
    def power(self, k: int) -> np.ndarray:
        if k not in self._powers:
            step = self.g0 if k > 0 else self.g0.inverse()
            nearest = max((j for j in self._powers if j * k >= 0 and abs(j) < abs(k)), key=abs)
            cur = GroupElement(self.g0.ring, self.g0.group, self.g0.n, self._powers[nearest])
            for j in range(abs(nearest), abs(k)):
                cur = cur @ step
                self._powers[int(math.copysign(j + 1, k))] = cur.coeffs
        return self._powers[k]

    def parameters(self, batch: ElementBatch) -> np.ndarray:
        """Axis coordinates of g . base for each element of the batch."""
        geo = self.geodesic
        if geo.kind == "halfplane":
            a, b, c, d = (x[:, 0] for x in batch.sl2_factors())
            z = self.base[0]
            gz = (a * z + b) / (c * z + d)
            (A, B), (C, D) = geo.normalizer
            return np.log(np.abs((A * gz + B) / (C * gz + D)))
        M = batch.embedding()
        zt = np.append(self.base, 1.0)
        W = M @ zt
        q = lambda U, v: U[:, :-1] @ np.conj(v[:-1]) - U[:, -1] * np.conj(v[-1])
        return geo.speed * 0.5 * np.log(np.abs(q(W, geo.Y) / q(W, geo.X)))

    def _apply(self, ks: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        out = np.empty_like(coeffs)
        ring = self.g0.ring
        for k in np.unique(ks):
            sel = ks == k
            out[sel] = ring.matmul(self.power(int(k))[None], coeffs[sel])
        return out

    def _normalize(self, coeffs: np.ndarray) -> np.ndarray:
        return sign_normalize(coeffs) if self.projective else coeffs

    # -- reduction -------------------------------------------------------------------------
    def reduce_batch(self, batch: ElementBatch) -> ElementBatch:
        ell = self.geodesic.length
        s = self.parameters(batch)
        ks = -np.floor(s / ell).astype(np.int64)
        reps = self._normalize(self._apply(ks, batch.coeffs))
        frac = s + ks * ell
        near = np.flatnonzero((frac < TIE_TOLERANCE * ell) | (frac > ell * (1 - TIE_TOLERANCE)))
        if near.size:
            # candidates r and g0 r (near 0) or g0^{-1} r (near length); keep the smaller key
            shift = np.where(frac[near] < 0.5 * ell, 1, -1)
            alt = self._normalize(self._apply(shift, reps[near]))
            ka = reps[near].reshape(near.size, -1)
            kb = alt.reshape(near.size, -1)
            for i in range(near.size):
                if tuple(kb[i]) < tuple(ka[i]):
                    reps[near[i]] = alt[i]
        return ElementBatch(batch.ring, batch.group, batch.n, reps)

    def reduce(self, g: GroupElement) -> GroupElement:
        return self.reduce_batch(ElementBatch.from_elements([g]))[0]

    def coset_representatives(self, batch: ElementBatch) -> ElementBatch:
        """Distinct representatives among the cosets met by ``batch``, in key order."""
        reps = self.reduce_batch(batch)
        uniq, _ = _unique_rows(reps.keys())
        return ElementBatch(batch.ring, batch.group, batch.n, uniq.reshape((-1,) + batch.coeffs.shape[1:]))


def coset_reduce(g: GroupElement, g0: GroupElement, base_point=None, projective: bool = False) -> GroupElement:
    """Representative of the coset <g0> g (see :class:`CosetReducer`)."""
    return CosetReducer(g0, base_point, projective).reduce(g)


def same_coset(g1: GroupElement, g2: GroupElement, g0: GroupElement, projective: bool = False) -> bool:
    """Exact test of ``g1 g2^{-1} in <g0>`` (up to sign when ``projective``).

    The candidate exponent comes from the eigenvalue of ``h = g1 g2^{-1}`` in the
    eigenbasis of ``g0``; membership is then confirmed by exact multiplication.
    """
    geo = geodesic_from(g0)
    h = g1 @ g2.inverse()
    H = h.embedding() if h.group != "SL2" else h.embedding(0)
    lam = max(geo.eigenvalues, key=abs)
    if geo.kind == "halfplane":
        w, V = np.linalg.eig(g0.embedding(0))
        i = int(np.argmax(np.abs(w)))
        v = V[:, i]
    else:
        v = geo.X
    Hv = H @ v
    mu = complex(np.vdot(v, Hv) / np.vdot(v, v))
    if abs(mu) == 0 or np.linalg.norm(Hv - mu * v) > 1e-6 * np.linalg.norm(Hv):
        return False
    k = int(round(math.log(abs(mu)) / math.log(abs(lam))))
    target = g0 ** k
    if h == target:
        return True
    return projective and h == -target
