"""Compare the numba and numpy backends of the per-term kernels.

    python benchmarks/bench_kernels.py [--n 200000] [--repeat 5]

Inputs are real group data (a word ball of SL2(Z), coset representatives,
a Picard word ball), so the timings reflect the series workloads.  Each
kernel is checked for agreement between backends before it is timed.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from bergman_poincare import _accel
from bergman_poincare.domains import DomainPoint, FockLattice
from bergman_poincare.groups import element, load_preset, word_ball
from bergman_poincare.series import coset_set, relative_series_hyperbolic, terms
from bergman_poincare.series.poincare import lattice_shells


def best_of(fn, repeat):
    ts = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t)
    return min(ts)


def workloads(n):
    sl2 = load_preset("sl2z")
    depth = 4
    while word_ball(sl2, depth, projective=True).count < n and depth < 40:
        depth += 1
    ball = word_ball(sl2, depth, projective=True)
    a, b, c, d = (np.ascontiguousarray(x) for x in ball.batch().sl2_factors())
    z = np.array([0.1 + 1.2j])
    wb = np.conj(np.array([-0.2 + 0.9j]))
    g0 = element(sl2, [[2, 1], [1, 1]])
    cs = coset_set(sl2, g0, depth + 6)
    ka, kb, kc, kd = (np.ascontiguousarray(x[:, 0]) for x in cs.reps.sl2_factors())

    pic = load_preset("picard")
    pb = word_ball(pic, 6)
    M = np.ascontiguousarray(pb.batch().embedding(), dtype=complex)
    zt = np.array([0.1, 0.05j, 1.0], dtype=complex)
    vecs = np.array([[1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]], dtype=complex)

    m, nn, _ = lattice_shells(int(np.sqrt(n) / 2))
    return {
        f"halfplane_point_terms (N={a.shape[0]})": lambda: terms.halfplane_point_terms(a, b, c, d, z, wb, 12),
        f"katok_logq (N={ka.size})": lambda: terms.katok_logq(ka, kb, kc, kd, 0.1 + 1.2j, 2, 1, 1, 1),
        f"ball_pairings (N={M.shape[0]})": lambda: terms.ball_pairings(M, zt, vecs),
        f"fock_terms (N={m.size})": lambda: terms.fock_terms(m, nn, 1j, 0.3 + 0.2j, 0.1 - 0.4j, 3, 1.0),
    }, (sl2, g0, cs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000, help="approximate number of terms per kernel call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    if not _accel.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend is available")
        return 1
    jobs, (sl2, g0, cs) = workloads(args.n)
    print(f"{'kernel':44s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, fn in jobs.items():
        with _accel.use_backend("numba"):
            ref = fn()  # also triggers compilation
            t_nb = best_of(fn, args.repeat)
        with _accel.use_backend("numpy"):
            alt = fn()
            t_np = best_of(fn, args.repeat)
        diff = float(np.max(np.abs(np.exp(ref - alt) - 1)))
        print(f"{name:44s} {1e3 * t_np:11.2f} {1e3 * t_nb:11.2f} {t_np / t_nb:8.2f} {diff:11.2e}")

    z = DomainPoint.halfplane(0.1 + 1.2j)
    for be in ("numpy", "numba"):
        with _accel.use_backend(be):
            relative_series_hyperbolic(sl2, g0, 6, z, 0, cosets=cs)
            t = best_of(lambda: relative_series_hyperbolic(sl2, g0, 6, z, 0, cosets=cs), args.repeat)
        print(f"relative series end to end, {len(cs)} cosets, {be}: {1e3 * t:.2f} ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
