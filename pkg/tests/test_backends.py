import os
import subprocess
import sys

import numpy as np
import pytest

from bergman_poincare import _accel
from bergman_poincare.domains import DomainPoint
from bergman_poincare.groups import element, load_preset, word_ball
from bergman_poincare.groups.presets import PICARD_LOXODROMIC
from bergman_poincare.numerics.summation import reduce_shells
from bergman_poincare.series import averaged_kernel, relative_series_hyperbolic, relative_series_loxodromic, terms
from bergman_poincare.series.poincare import lattice_shells

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def both(fn, *args):
    return fn.numba(*args), fn.numpy(*args)


def close_logs(a, b, tol):
    """Log-terms agree when exp(a - b) is 1 (phases compared modulo 2 pi)."""
    return np.max(np.abs(np.expm1(a - b))) < tol


@needs_numba
def test_halfplane_terms_agree():
    sl = load_preset("sl2z")
    a, b, c, d = word_ball(sl, 10).batch().sl2_factors()
    z, wb = np.array([0.1 + 1.2j]), np.conj(np.array([-0.2 + 0.9j]))
    x, y = both(terms.halfplane_point_terms, a, b, c, d, z, wb, 12)
    assert close_logs(x, y, 1e-12)


@needs_numba
def test_katok_terms_agree():
    sl = load_preset("sl2z")
    a, b, c, d = (v[:, 0] for v in word_ball(sl, 10).batch().sl2_factors())
    x, y = both(terms.katok_logq, a, b, c, d, 0.1 + 1.2j, 2.0, 1.0, 1.0, 1.0)
    assert close_logs(x, y, 1e-12)


@needs_numba
def test_ball_pairings_agree():
    pic = load_preset("picard")
    M = np.ascontiguousarray(word_ball(pic, 3).batch().embedding(), dtype=complex)
    zt = np.array([0.1, 0.05j, 1.0])
    vecs = np.array([[1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]], dtype=complex)
    x, y = both(terms.ball_pairings, M, zt, vecs)
    assert close_logs(x, y, 1e-12)


@needs_numba
def test_fock_terms_agree():
    m, n, _ = lattice_shells(10)
    x, y = both(terms.fock_terms, m, n, 1j, 0.3 + 0.2j, 0.1 - 0.4j, 3, 1.0)
    assert close_logs(x, y, 1e-10)  # log terms of size ~ 1e3, so the absolute rounding is larger


@needs_numba
def test_reduce_shells_agree():
    rng = np.random.default_rng(0)
    L = rng.normal(size=5000) * 20 + 1j * rng.uniform(-np.pi, np.pi, 5000)
    offs = np.array([0, 1, 10, 100, 1000, 5000])
    (m1, a1, l1), (m2, a2, l2) = both(reduce_shells, L, offs)
    assert np.allclose(m1, m2, rtol=0, atol=1e-12) and np.allclose(l1, l2, rtol=0, atol=1e-12)
    assert np.allclose(np.exp(1j * a1), np.exp(1j * a2), atol=1e-12)


@needs_numba
def test_series_agree_across_backends():
    sl = load_preset("sl2z")
    g0 = element(sl, [[2, 1], [1, 1]])
    z, w = DomainPoint.halfplane(0.1 + 1.2j), DomainPoint.halfplane(-0.3 + 0.9j)
    pic = load_preset("picard")
    zb = DomainPoint.ball(0.1 + 0.05j, -0.08j)
    out = {}
    for be in ("numba", "numpy"):
        with _accel.use_backend(be):
            out[be] = (averaged_kernel(sl, 12, z, w, 12).value, relative_series_hyperbolic(sl, g0, 6, z, 14).value,
                       relative_series_loxodromic(pic, element(pic, PICARD_LOXODROMIC), 2, zb, 4).value)
    for x, y in zip(out["numba"], out["numpy"]):
        assert x.isclose(y, 1e-12)


def test_environment_switch_selects_numpy():
    env = dict(os.environ, BERGMAN_POINCARE_NUMBA="0")
    code = "from bergman_poincare import _accel; print(_accel.backend())"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "numpy"


def test_set_backend_validation():
    with pytest.raises(ValueError):
        _accel.set_backend("fortran")
