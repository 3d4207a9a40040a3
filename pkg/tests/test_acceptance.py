"""Acceptance criteria 1-10.

Each criterion runs once per session (worker count 1); criterion 10 reruns
1-9 with 8 workers and compares every numeric output bit for bit.  One
PASS/FAIL line per criterion is printed in the terminal summary, or run this
file directly: ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
import pytest

from bergman_poincare.cli import verify as V
from bergman_poincare.domains import DomainPoint, FockLattice, log_h, p_min
from bergman_poincare.groups import element, load_preset
from bergman_poincare.groups.presets import cyclic
from bergman_poincare.series import (geodesic_norm_squared, geodesic_state, halfplane_grid, point_state,
                                     relative_factory, set_default_workers, stability)

G0 = [[2, 1], [1, 1]]
HOLONOMY_G0 = [[[2, 1], [1, 1]], [[3, 2], [1, 1]], [[5, 2], [2, 1]]]
NORM_PS = (8, 12, 16, 24, 32)
NORM_SLOPE, NORM_SLOPE_TOL = 0.5, 0.1
DENSITY_TOL = 1e-12

RESULTS: dict[int, "Outcome"] = {}


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    numbers: list = field(default_factory=list)  # every numeric output, for the determinism rerun
    seconds: float = 0.0
    budget: float = math.inf

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f} s)"


def _from_checks(number, title, checks, budget, seconds, extra=()):
    worst = max(checks, key=lambda c: c.residual / c.tolerance)
    passed = all(c.passed for c in checks) and seconds < budget
    detail = f"{len(checks)} checks, worst {worst.name}: {worst.residual:.2e} (tol {worst.tolerance:g})"
    nums = [c.residual for c in checks] + [v for c in checks for v in c.info.values()
                                           if isinstance(v, (int, float, complex))] + list(extra)
    return Outcome(number, title, passed, detail, nums, seconds, budget)


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# -- the criteria ---------------------------------------------------------------------------------------------------
def criterion_1():
    groups = [load_preset(n) for n in ("sl2z", "hilbert2", "sp4z", "picard")]
    checks, s = _timed(lambda: [c for g in groups for c in V.chain_rule(g, trials=1000, seed=1)])
    return _from_checks(1, "cocycle chain rule", checks, 10, s)


def criterion_2():
    groups = [load_preset(n) for n in ("sl2z", "hilbert2", "sp4z", "picard")] + [FockLattice(1j)]

    def run():
        out = []
        for g in groups:
            kind, n = ("fock", 1) if isinstance(g, FockLattice) else g.domain
            out += V.equivariance(g, p=2 * p_min(kind, n), trials=200, seed=2, radius=6)
        return out

    checks, s = _timed(run)
    return _from_checks(2, "kernel equivariance", checks, 30, s)


def criterion_3():
    checks, s = _timed(lambda: V.theta(ps=range(1, 7), trials=50, seed=3, tau=1j, radius=8))
    return _from_checks(3, "lattice average vs theta kernel", checks, 60, s)


def criterion_4():
    checks, s = _timed(lambda: V.reproducing(p=8, pairs=5, seed=4))
    return _from_checks(4, "reproducing integral on H", checks, 120, s)


def criterion_5():
    sl = load_preset("sl2z")
    factory = relative_factory(sl, element(sl, G0))
    (a, b, same), s = _timed(lambda: stability(factory, range(4, 13), halfplane_grid(), 14))
    thr = a.threshold
    above = [r for r in a.rows if thr is not None and r.p >= thr]
    passed = same and thr is not None and all(r.verdict in ("NONVANISHING", "ZERO") for r in above) and s < 600
    verdicts = " ".join(f"{r.weight}:{r.verdict[0]}" for r in a.rows)
    detail = (f"threshold weight {2 * thr if thr else None}, verdicts [{verdicts}], "
              f"{'unchanged' if same else 'CHANGED'} at depth 28")
    nums = [x for rep in (a, b) for r in rep.rows for x in (r.max_normalized, r.uncertainty)]
    return Outcome(5, "non-vanishing scan", passed, detail, nums, s, 600)


def criterion_6():
    sl = load_preset("sl2z")
    checks, s = _timed(lambda: V.period(sl, element(sl, G0), p=6, points=10, seed=6, depth=16))
    c = checks[0].info["constant"]
    return _from_checks(6, "isotropic state vs relative series", checks, 600, s, [c.real, c.imag])


def criterion_7():
    checks, s = _timed(lambda: V.holonomy_check(load_preset("sl2z"), HOLONOMY_G0, p=6))
    return _from_checks(7, "Bohr-Sommerfeld holonomy", checks, 10, s)


def criterion_8():
    checks, s = _timed(lambda: V.counting(load_preset("sl2z"), DomainPoint.halfplane(1j), depth=22))
    return _from_checks(8, "orbit counting", checks, 120, s)


def criterion_9():
    sl = load_preset("sl2z")
    g0 = element(sl, G0)
    # the cyclic group <g0> embeds the closed geodesic in a cylinder, so the state is the Lagrangian one
    cyl = cyclic(g0)

    def run():
        norms = [geodesic_norm_squared(geodesic_state(cyl, g0, p)) for p in NORM_PS]
        w = DomainPoint.halfplane(0.3 + 1.7j)
        triv = load_preset("trivial")
        dens = [geodesic_norm_squared(point_state(triv, p, w, 0)) * math.exp(p * log_h(w)) for p in NORM_PS]
        return norms, dens

    (norms, dens), s = _timed(run)
    slope = float(np.polyfit(np.log(NORM_PS), np.log(norms), 1)[0])
    dens_err = max(abs(d / ((p - 1) / (4 * math.pi)) - 1) for d, p in zip(dens, NORM_PS))
    passed = abs(slope - NORM_SLOPE) <= NORM_SLOPE_TOL and dens_err < DENSITY_TOL and s < 1200
    detail = (f"slope {slope:.4f} (target {NORM_SLOPE} +- {NORM_SLOPE_TOL}), "
              f"norms {', '.join(f'{x:.3f}' for x in norms)}; density error {dens_err:.1e}")
    return Outcome(9, "norm scaling", passed, detail, norms + dens + [slope], s, 1200)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


def run_all(workers: int) -> list[Outcome]:
    set_default_workers(workers)
    try:
        return [c() for c in CRITERIA]
    finally:
        set_default_workers(1)


def criterion_10(first: list[Outcome]) -> Outcome:
    again, s = _timed(lambda: run_all(8))
    diffs = [a.number for a, b in zip(first, again) if a.numbers != b.numbers]
    count = sum(len(a.numbers) for a in first)
    detail = f"{count} numbers compared at 1 vs 8 workers, " + (f"differences in {diffs}" if diffs else "all identical")
    return Outcome(10, "determinism", not diffs, detail, [], s)


# -- pytest wiring --------------------------------------------------------------------------------------------------
@pytest.fixture(scope="session")
def outcomes():
    out = run_all(1)
    for o in out:
        RESULTS[o.number] = o
    return out


@pytest.mark.acceptance
@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(outcomes, number):
    o = outcomes[number - 1]
    assert o.passed, o.line()


@pytest.mark.acceptance
def test_criterion_10_determinism(outcomes):
    o = criterion_10(outcomes)
    RESULTS[10] = o
    assert o.passed, o.line()


if __name__ == "__main__":
    first = run_all(1)
    for o in first:
        print(o.line(), flush=True)
    print(criterion_10(first).line())
