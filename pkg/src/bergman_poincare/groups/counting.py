"""Orbit counting N(r) = #{g : d(g x, y) <= r} over a word ball."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .enumeration import WordBall, word_ball
from .presets import GroupPreset

COUNT_TOLERANCE = 1e-9


def orbit_images(ball: WordBall, x) -> np.ndarray:
    """Coordinates of g . x for every g in the ball, shape (N, dim)."""
    coords = np.asarray(x.coords, dtype=complex)
    batch = ball.batch()
    if batch.group == "SL2":
        a, b, c, d = batch.sl2_factors()
        return (a * coords + b) / (c * coords + d)
    if batch.group == "SU":
        W = batch.embedding() @ np.append(coords, 1.0)
        return W[:, :-1] / W[:, -1:]
    raise NotImplementedError("orbit counting needs a distance on the domain")


def orbit_distances(preset: GroupPreset, x, y, depth: int, projective: bool = False) -> np.ndarray:
    """d(g x, y) for every g in the word ball, in enumeration order."""
    ball = word_ball(preset, depth, projective)
    gx = orbit_images(ball, x)
    w = np.asarray(y.coords, dtype=complex)
    if preset.group == "SL2":
        f = 2.0 * np.arcsinh(np.abs(gx - w) / (2.0 * np.sqrt(gx.imag * w.imag)))
        return np.sqrt(np.sum(f * f, axis=1))
    n = preset.n
    zw = gx @ np.conj(w)
    diff = np.sum(np.abs(gx - w) ** 2, axis=1)
    lag = np.zeros(len(gx))
    for j in range(n):
        for k in range(j + 1, n):
            lag += np.abs(gx[:, j] * w[k] - gx[:, k] * w[j]) ** 2
    num = np.maximum(diff - lag, 0.0)
    rho = np.minimum(np.sqrt(num) / np.abs(1 - zw), np.nextafter(1.0, 0.0))
    return np.sqrt((n + 1) / 2.0) * 2.0 * np.arctanh(rho)


def count_lattice(preset: GroupPreset, x, y, r: float, depth: int, projective: bool = False) -> int:
    """Number of enumerated g with d(g x, y) <= r."""
    if not preset.generators:
        return 1 if _dist_identity(x, y) <= r + COUNT_TOLERANCE else 0
    d = orbit_distances(preset, x, y, depth, projective)
    return int(np.count_nonzero(d <= r + COUNT_TOLERANCE * (1 + r)))


def _dist_identity(x, y) -> float:
    from ..domains.distance import hyperbolic_distance

    return hyperbolic_distance(x, y)


@dataclass(frozen=True)
class GrowthFit:
    rate: float
    intercept: float
    radii: np.ndarray
    counts: np.ndarray


def fit_growth(distances: np.ndarray, r_min: float, r_max: float, samples: int = 25) -> GrowthFit:
    """Least-squares slope of log N(r) on [r_min, r_max]."""
    ds = np.sort(distances)
    radii = np.linspace(r_min, r_max, samples)
    counts = np.searchsorted(ds, radii + COUNT_TOLERANCE * (1 + radii), side="right")
    if np.any(counts == 0):
        raise ValueError("empty balls in the fitting range")
    slope, icpt = np.polyfit(radii, np.log(counts), 1)
    return GrowthFit(float(slope), float(icpt), radii, counts)


def complete_radius(preset: GroupPreset, x, y, depth: int, projective: bool = False) -> float:
    """Radius up to which the orbit is fully captured, estimated as the minimum distance on the last shell."""
    ball = word_ball(preset, depth, projective)
    d = orbit_distances(preset, x, y, depth, projective)
    offsets = ball.offsets()
    last = d[offsets[-2]:]
    return float(last.min()) if last.size else float("inf")
