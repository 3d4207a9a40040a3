import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergman_poincare.domains import DomainPoint, FockLattice, act, bergman_kernel, cocycle
from bergman_poincare.domains.kernels import halfplane_constant
from bergman_poincare.groups import element, load_preset, random_word
from bergman_poincare.groups.presets import PICARD_LOXODROMIC, cyclic
from bergman_poincare.numerics import LogComplex
from bergman_poincare.numerics.precision import working_precision
from bergman_poincare.series import (CANCELLED, INCONCLUSIVE, NONVANISHING, UNCONVERGED, ZERO, Shell,
                                     averaged_kernel, coset_set, geodesic_norm_squared, katok_constant,
                                     nonvanishing_scan, point_density, point_factory, point_series, point_state,
                                     relative_factory, relative_series_hyperbolic, relative_series_loxodromic,
                                     relative_series_torus, tail_from_shells, theta_basis)
from bergman_poincare.series.relative import PreconditionError

# Petersson norm of the discriminant form, int_F |Delta|^2 y^12 dx dy / y^2, by mpmath quadrature over F
DELTA_NORM = 1.03536205680432092e-6
# relative series of [[2, 1], [1, 1]] at p = 6 divided by Delta (constant, since S_12 is spanned by Delta)
RELATIVE_OVER_DELTA = -39.62132550759
# loop integral of conj(Delta) against the flat section, divided by DELTA_NORM * RELATIVE_OVER_DELTA (mpmath)
KATOK_C6 = -80.840606014920589

PTS = [1j, 0.1 + 1.2j, -0.3 + 0.9j]


def H(z):
    return DomainPoint.halfplane(z)


def delta(z):
    """Discriminant form from its q-product, in mpmath."""
    q = mpmath.exp(2j * mpmath.pi * mpmath.mpc(z))
    prod, qn = mpmath.mpc(1), q
    while abs(qn) > 1e-22:
        prod *= 1 - qn
        qn *= q
    return complex(q * prod ** 24)


# -- truncated sums -----------------------------------------------------------------------------------------------
def _shells(mags):
    return [Shell(k, LogComplex.from_complex(m), math.log(m) if m > 0 else -math.inf, 1) for k, m in enumerate(mags)]


def test_tail_rule():
    assert tail_from_shells(_shells([8, 4, 2, 1])) == pytest.approx(1.0)
    assert tail_from_shells(_shells([1, 0.5, 0.1, 0.095])) == math.inf  # last ratio 0.95
    assert tail_from_shells(_shells([1, 0.5, 0.25])) == math.inf  # too few shells
    assert tail_from_shells(_shells([1, 0.95, 0.5, 0.2, 0.1])) == pytest.approx(0.1 * (0.5 / 0.95) / (1 - 0.5 / 0.95))  # worst of the last three ratios
    assert tail_from_shells(_shells([1, 1, 1]), exhausted=True) == 0.0


def test_tail_rule_breaks_at_threshold():
    # ratio 0.9 is not below the threshold
    assert tail_from_shells(_shells([1, 0.9, 0.81, 0.729])) == math.inf
    assert math.isfinite(tail_from_shells(_shells([1, 0.89, 0.89**2, 0.89**3])))


def test_replay_and_restriction(sl2z):
    z, w = H(PTS[1]), H(PTS[2])
    s = point_series(sl2z, 12, z, w, 12)
    assert s.replay() == s.value
    assert s.terms == sum(x.count for x in s.shells)
    r = s.restricted(6)
    assert r.value == point_series(sl2z, 12, z, w, 6).value
    assert r.depth == 6


# -- point series ---------------------------------------------------------------------------------------------------
@pytest.mark.parametrize("p", [3, 6, 11])
def test_trivial_group_gives_the_kernel(p):
    triv = load_preset("trivial")
    z, w = H(0.3 + 0.7j), H(-1 + 2j)
    s = point_series(triv, p, z, w, 5)
    assert s.value.isclose(bergman_kernel(z, w, p).value, 1e-14)
    assert s.tail_estimate == 0.0 and s.terms == 1


def test_odd_weight_cancels_for_sl2z(sl2z):
    s = point_series(sl2z, 7, H(PTS[1]), H(PTS[2]), 8)
    assert s.cancellation_flag and CANCELLED in s.flags
    assert s.value.is_zero and s.tail_estimate == 0.0


def test_odd_weight_survives_without_minus_identity(g0):
    s = point_series(cyclic(g0), 7, H(PTS[1]), H(PTS[2]), 12)
    assert not s.cancellation_flag and not s.value.is_zero


@pytest.mark.parametrize("depth", [12, 16, 20])
def test_weight_12_average_is_the_discriminant_kernel(sl2z, depth):
    # the L2 forms of weight 12 are the multiples of Delta, so the averaged kernel is Delta(z) conj Delta(w) / |Delta|^2
    for z in PTS:
        for w in PTS[:2]:
            s = averaged_kernel(sl2z, 12, H(z), H(w), depth)
            ref = delta(z) * delta(w).conjugate() / DELTA_NORM
            assert s.converged
            assert abs(complex(s) - ref) <= s.uncertainty + 1e-12 * abs(ref)


def test_depth_doubling_at_i(sl2z):
    z = H(1j)
    a, b = point_series(sl2z, 12, z, z, 10), point_series(sl2z, 12, z, z, 20)
    assert abs(complex(a) - complex(b)) <= a.uncertainty
    assert b.uncertainty < a.uncertainty


def test_point_series_carries_the_kernel_cardinality(sl2z):
    z, w = H(PTS[1]), H(PTS[2])
    assert complex(point_series(sl2z, 12, z, w, 10)) == pytest.approx(2 * complex(averaged_kernel(sl2z, 12, z, w, 10)),
                                                                      rel=1e-14)


@given(st.complex_numbers(max_magnitude=0.5), st.complex_numbers(max_magnitude=0.5),
       st.sampled_from([4, 6, 8]))
def test_point_series_hermitian(a, b, p):
    sl = load_preset("sl2z")
    z, w = H(a.real + 1j * (1 + abs(a.imag))), H(b.real + 1j * (1 + abs(b.imag)))
    s, t = point_series(sl, p, z, w, 6), point_series(sl, p, w, z, 6)
    assert abs(complex(s) - complex(t).conjugate()) <= 1e-12 * abs(complex(s)) + s.rounding_error


def test_extended_precision_matches_double(sl2z):
    z, w = H(PTS[1]), H(PTS[2])
    ref = point_series(sl2z, 12, z, w, 6)
    with working_precision(128):
        ext = point_series(sl2z, 12, z, w, 6)
    assert ext.info["precision"] == 128
    assert ext.value.isclose(ref.value, 1e-12)


def test_workers_are_bit_identical(sl2z, g0):
    z, w = H(PTS[1]), H(PTS[2])
    a, b = point_series(sl2z, 12, z, w, 14, workers=1), point_series(sl2z, 12, z, w, 14, workers=8)
    assert a.value == b.value and a.shells == b.shells
    r1 = relative_series_hyperbolic(sl2z, g0, 6, z, 14, workers=1)
    r8 = relative_series_hyperbolic(sl2z, g0, 6, z, 14, workers=8)
    assert r1.value == r8.value and r1.tail_estimate == r8.tail_estimate


# -- relative series ------------------------------------------------------------------------------------------------
def test_single_coset_for_the_cyclic_group(g0):
    cy = cyclic(g0)
    assert len(coset_set(cy, g0, 8)) == 1
    z = 0.1 + 1.2j
    s = relative_series_hyperbolic(cy, g0, 3, H(z), 8)
    assert complex(s) == pytest.approx((z * z - z - 1) ** -3, rel=1e-14)
    assert s.tail_estimate == 0.0


def test_relative_series_is_proportional_to_delta(sl2z, g0):
    for z in PTS:
        s = relative_series_hyperbolic(sl2z, g0, 6, H(z), 20)
        assert complex(s) / delta(z) == pytest.approx(RELATIVE_OVER_DELTA, rel=1e-11)
        assert s.info["weight"] == 12


@pytest.mark.parametrize("z", PTS[:2])
def test_relative_series_depth_doubling(sl2z, g0, z):
    a, b = relative_series_hyperbolic(sl2z, g0, 6, H(z), 14), relative_series_hyperbolic(sl2z, g0, 6, H(z), 28)
    assert abs(complex(a) - complex(b)) <= a.uncertainty
    assert b.uncertainty < a.uncertainty


def test_odd_p_cancels_by_axis_reversal(sl2z, g0):
    s = relative_series_hyperbolic(sl2z, g0, 5, H(PTS[1]), 12)
    assert s.cancellation_flag and s.info["weight"] == 10


@given(st.integers(0, 2**31 - 1))
def test_relative_series_automorphy(seed):
    sl = load_preset("sl2z")
    g0 = element(sl, [[2, 1], [1, 1]])
    rng = np.random.default_rng(seed)
    g = random_word(sl, int(rng.integers(1, 4)), rng)
    z = H(complex(rng.uniform(-0.4, 0.4), rng.uniform(1.0, 1.6)))
    gz = act(g, z)
    if gz.coords[0].imag < 0.3:
        return
    f, fg = relative_series_hyperbolic(sl, g0, 6, z, 18), relative_series_hyperbolic(sl, g0, 6, gz, 18)
    j = complex(cocycle(g, z).value.to_complex())
    assert abs(complex(fg) - j ** 12 * complex(f)) <= fg.uncertainty + abs(j) ** 12 * f.uncertainty


def test_relative_series_rejects_small_p(sl2z, g0):
    with pytest.raises(PreconditionError):
        relative_series_hyperbolic(sl2z, g0, 1, H(1j), 4)


def test_loxodromic_and_torus_automorphy():
    pic = load_preset("picard")
    g0 = element(pic, PICARD_LOXODROMIC)
    z = DomainPoint.ball(0.1 + 0.05j, -0.08j)
    lox = relative_series_loxodromic(pic, g0, 2, z, 6)
    assert lox.info["weight"] == 12 and lox.converged
    tor4, tor = relative_series_torus(pic, g0, 1, 2, z, 4), relative_series_torus(pic, g0, 1, 2, z, 6)
    assert tor.info["weight"] == 12
    for g in pic.generators[:3]:
        gz = act(g, z)
        j = complex(cocycle(g, z).value.to_complex())
        lg = relative_series_loxodromic(pic, g0, 2, gz, 6)
        assert abs(complex(lg) - j ** 12 * complex(lox)) <= lg.uncertainty + abs(j) ** 12 * lox.uncertainty
        # the torus series has no tail bound yet at this depth; the defect must shrink with depth
        d4 = abs(complex(relative_series_torus(pic, g0, 1, 2, gz, 4)) / (j ** 12 * complex(tor4)) - 1)
        d6 = abs(complex(relative_series_torus(pic, g0, 1, 2, gz, 6)) / (j ** 12 * complex(tor)) - 1)
        assert d6 < d4 and d6 < 0.01


# -- states ---------------------------------------------------------------------------------------------------------
def test_katok_constant_against_oracle(sl2z, g0):
    pts = [H(z) for z in (0.1 + 1.2j, -0.2 + 1.0j, 0.3 + 1.5j)]
    fit = katok_constant(sl2z, g0, 6, pts, 14, 14)
    assert fit.spread < 1e-8
    assert fit.constant.real == pytest.approx(KATOK_C6, rel=1e-8)
    assert abs(fit.constant.imag) < 1e-6


def test_point_state_norm_is_the_diagonal(sl2z):
    w = H(PTS[1])
    st_ = point_state(sl2z, 12, w, 14)
    exact = abs(delta(PTS[1])) ** 2 / DELTA_NORM
    assert geodesic_norm_squared(st_) == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("p", [3, 8, 20])
def test_point_density_on_h(p):
    assert point_density(p, H(0.4 + 3j)) == pytest.approx(halfplane_constant(1, p), rel=1e-12)
    assert halfplane_constant(1, p) == pytest.approx((p - 1) / (4 * math.pi), rel=1e-15)


@pytest.mark.parametrize("tau", [1j, 0.3 + 1.1j])
@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_theta_basis_is_orthonormal(tau, p):
    # |f|^2 exp(-pi p |z|^2 / v) is lattice periodic, so the midpoint rule is spectrally accurate
    lat = FockLattice(tau)
    v, n = lat.covolume, 48
    s = (np.arange(n) + 0.5) / n
    F = np.array([np.exp(theta_basis(lat, p, a + b * tau) - np.pi * p * abs(a + b * tau) ** 2 / (2 * v))
                  for a in s for b in s])
    G = F.T @ F.conj() * v / n ** 2
    assert np.max(np.abs(G - np.eye(p))) < 1e-12


# -- scans ----------------------------------------------------------------------------------------------------------
def test_scan_verdicts(sl2z, g0):
    grid = [H(z) for z in PTS]
    triv = nonvanishing_scan(point_factory(load_preset("trivial"), H(1j)), [3, 4], grid, 2)
    assert triv.verdicts() == {3: NONVANISHING, 4: NONVANISHING}
    rel = nonvanishing_scan(relative_factory(sl2z, g0), [5, 6], grid, 14)
    assert rel.verdicts() == {5: ZERO, 6: NONVANISHING}
    assert rel.threshold == 6
    assert rel.rows[0].weight == 10 and rel.rows[1].weight == 12


def test_scan_without_tail_is_inconclusive(sl2z, g0):
    rep = nonvanishing_scan(relative_factory(sl2z, g0), [6], [H(PTS[1])], 2)
    assert rep.rows[0].verdict == INCONCLUSIVE and not rep.rows[0].converged
    assert UNCONVERGED in relative_series_hyperbolic(sl2z, g0, 6, H(PTS[1]), 2).flags
    assert rep.threshold is None
