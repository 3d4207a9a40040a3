"""Non-vanishing scans: does a family of series stay visibly away from zero as p grows?"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..domains.points import DomainPoint, log_h
from .poincare import point_series
from .relative import relative_series_hyperbolic
from .truncated import CANCELLED, TruncatedSum

NONVANISHING = "NONVANISHING"
ZERO = "ZERO"
INCONCLUSIVE = "INCONCLUSIVE"
MARGIN = 10.0

SeriesFactory = Callable[[int, DomainPoint, int], TruncatedSum]


@dataclass(frozen=True)
class ScanRow:
    p: int
    weight: int
    max_normalized: float
    uncertainty: float  # normalised the same way, at the maximising point
    argmax: complex | tuple
    verdict: str
    converged: bool

    @property
    def margin(self) -> float:
        if self.uncertainty == 0:
            return math.inf if self.max_normalized > 0 else 0.0
        return self.max_normalized / self.uncertainty


@dataclass
class ScanReport:
    rows: list
    depth: int
    grid_size: int
    info: dict = field(default_factory=dict)

    def verdicts(self) -> dict:
        return {r.p: r.verdict for r in self.rows}

    @property
    def threshold(self) -> int | None:
        """Smallest tested p from which every tested p is NONVANISHING or exactly ZERO.

        Exactly cancelled weights (sign or symmetry) are skipped; None if the
        largest non-cancelled p is not NONVANISHING.
        """
        t = None
        for r in sorted(self.rows, key=lambda r: r.p, reverse=True):
            if r.verdict == ZERO:
                continue
            if r.verdict != NONVANISHING:
                break
            t = r.p
        return t


def halfplane_grid(xs=None, ys=(0.95, 1.15, 1.4, 1.7, 2.0)) -> list:
    """Points of H near the standard fundamental domain of SL2(Z) (5 x 5 by default).

    Far from the fundamental domain the word-length shells decay more slowly
    than the true orbit tail, so grids are kept in that region.
    """
    xs = np.linspace(-0.4, 0.4, 5) if xs is None else xs
    return [DomainPoint.halfplane(complex(x, y)) for x in xs for y in ys]


def _coords(z: DomainPoint):
    return z.coords[0] if len(z.coords) == 1 else tuple(z.coords)


def scan_weight(factory: SeriesFactory, p: int, grid: Sequence[DomainPoint], depth: int) -> ScanRow:
    best, best_u, arg = -math.inf, math.inf, None
    weight = p
    converged = True
    for z in grid:
        s = factory(p, z, depth)
        if s.cancellation_flag or CANCELLED in s.flags:
            return ScanRow(p, int(s.info.get("weight", p)), 0.0, 0.0, _coords(z), ZERO, True)
        weight = s.info.get("weight", p)
        scale = 0.5 * weight * log_h(z)
        lm = s.value.log_mag
        val = math.exp(lm + scale) if lm > -math.inf else 0.0
        if val > best:
            best, arg = val, _coords(z)
            best_u = s.uncertainty * math.exp(scale)
            converged = s.converged
    if not converged or not math.isfinite(best_u):
        verdict = INCONCLUSIVE
    else:
        verdict = NONVANISHING if best > MARGIN * best_u else INCONCLUSIVE
    return ScanRow(p, int(weight), best, best_u, arg, verdict, converged)


def nonvanishing_scan(factory: SeriesFactory, ps: Sequence[int], grid: Sequence[DomainPoint],
                      depth: int) -> ScanReport:
    """Per p: the largest gauge-invariant magnitude |s(z)| h(z)^{w/2} over ``grid`` and its verdict.

    ``factory(p, z, depth)`` returns a :class:`TruncatedSum`; its ``info['weight']``
    (default p) is the power w of h that makes the magnitude trivialisation
    independent.  A weight is NONVANISHING when the maximum exceeds ten times
    the uncertainty (tail plus rounding) at the maximising point, ZERO when the
    sign policy cancels it exactly, and INCONCLUSIVE otherwise.
    """
    rows = [scan_weight(factory, int(p), grid, depth) for p in ps]
    return ScanReport(rows, depth, len(grid))


def stability(factory: SeriesFactory, ps: Sequence[int], grid: Sequence[DomainPoint], depth: int):
    """Scan at ``depth`` and ``2 depth``; returns (report, doubled report, verdicts unchanged)."""
    a = nonvanishing_scan(factory, ps, grid, depth)
    b = nonvanishing_scan(factory, ps, grid, 2 * depth)
    return a, b, a.verdicts() == b.verdicts()


def relative_factory(preset, g0) -> SeriesFactory:
    """Factory for the hyperbolic relative series of ``g0`` (weights are 2p)."""
    return lambda p, z, depth: relative_series_hyperbolic(preset, g0, p, z, depth)


def point_factory(preset, w: DomainPoint) -> SeriesFactory:
    """Factory for the point series ``z -> P(z, w)`` with ``w`` held fixed (weight p in z)."""
    return lambda p, z, depth: point_series(preset, p, z, w, depth)
