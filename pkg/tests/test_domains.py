import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergman_poincare.domains import (Curve, DomainMismatchError, DomainPoint, FockLattice, InvalidPointError,
                                      UnsupportedDomainError, WeightError, act, act_with_cocycle, ball_constant,
                                      bergman_kernel, bundle_power, check_weight, cocycle, connection_form,
                                      constant_curve, fock_kernel, holonomy, hyperbolic_distance, kernel_density,
                                      log_h, p_min, parallel_transport)
from bergman_poincare.groups import element, geodesic_from, load_preset

xs = st.floats(-3, 3)
ys = st.floats(0.05, 5)
upper = st.builds(complex, xs, ys)


def H(*zs):
    return DomainPoint.halfplane(*zs)


# -- points ------------------------------------------------------------------------------------
def test_invalid_points_name_the_condition():
    with pytest.raises(InvalidPointError, match="upper half plane violated"):
        H(1 - 1j)
    with pytest.raises(InvalidPointError, match="unit ball violated"):
        DomainPoint.ball(0.8, 0.7)
    with pytest.raises(InvalidPointError, match="Siegel"):
        DomainPoint.siegel(np.array([[1j, 0], [0, -1j]]))
    with pytest.raises(InvalidPointError):
        DomainPoint("halfplane", 2, (1j,))
    with pytest.raises(InvalidPointError):
        H(complex(float("nan"), 1))


def test_log_h_per_domain():
    assert log_h(H(2j, 3j)) == pytest.approx(math.log(6))
    assert log_h(DomainPoint.ball(0.6, 0)) == pytest.approx(math.log(0.64))
    assert log_h(DomainPoint.siegel(np.diag([2j, 3j]))) == pytest.approx(math.log(6))
    assert log_h(DomainPoint.fock(1 + 1j), area=2.0) == pytest.approx(-math.pi)


# -- actions and cocycles ------------------------------------------------------------------------
def test_sl2_action_examples(sl2z):
    S, T = sl2z.generators
    assert act(S, H(1j)).coords[0] == pytest.approx(1j)
    assert act(T, H(1j)).coords[0] == pytest.approx(1 + 1j)
    z = 0.3 + 0.7j
    assert complex(cocycle(S, H(z))) == pytest.approx(z)  # c z + d with c = 1, d = 0
    w, j = act_with_cocycle(S, H(z))
    assert w.coords[0] == pytest.approx(-1 / z)
    assert complex(j) == pytest.approx(z)


def test_hilbert_action_uses_both_embeddings():
    P = load_preset("hilbert2")
    g = P.generators[2]  # z -> z + sqrt 2 in the first factor, z - sqrt 2 in the second
    w = act(g, H(1j, 2j))
    assert w.coords[0] == pytest.approx(math.sqrt(2) + 1j)
    assert w.coords[1] == pytest.approx(-math.sqrt(2) + 2j)


def test_siegel_inversion():
    P = load_preset("sp4z")
    J = P.generators[0]
    Z = np.array([[1 + 2j, 0.5], [0.5, -0.3 + 1.5j]])
    w, j = act_with_cocycle(J, DomainPoint.siegel(Z))
    assert np.allclose(w.matrix(), -np.linalg.inv(Z))
    assert complex(j) == pytest.approx(np.linalg.det(-Z))


def test_ball_unit_element():
    P = load_preset("picard")
    g = P.generators[0]  # diag(i, -i, 1)
    z = DomainPoint.ball(0.2 + 0.1j, -0.3j)
    w, j = act_with_cocycle(g, z)
    assert np.allclose(w.coords, [1j * (0.2 + 0.1j), -1j * (-0.3j)])
    assert complex(j) == pytest.approx(1)


def test_domain_mismatch(sl2z):
    with pytest.raises(DomainMismatchError):
        act(sl2z.generators[0], DomainPoint.ball(0.1))


def test_fock_translation_multiplier_cocycle():
    lat = FockLattice(0.3 + 1.1j)
    a, b = lat.translation(1, 2), lat.translation(-3, 1)
    z = DomainPoint.fock(0.2 - 0.4j)
    lhs = complex(cocycle(a @ b, z))
    rhs = complex(cocycle(a, act(b, z))) * complex(cocycle(b, z))
    assert lhs == pytest.approx(rhs, rel=1e-12)


# -- kernels --------------------------------------------------------------------------------------
@pytest.mark.parametrize("p", [3, 4, 8, 17])
def test_halfplane_diagonal_density(p):
    # K(z, z) h(z)^p = (p - 1) / (4 pi) everywhere on H
    for z in (1j, 0.3 + 2j, -5 + 0.01j):
        assert kernel_density(H(z), p) == pytest.approx((p - 1) / (4 * math.pi), rel=1e-13)


def test_halfplane_kernel_against_mpmath():
    z, w, p = 0.3 + 1.2j, -0.7 + 0.4j, 9
    ref = (p - 1) / (4 * mpmath.pi) * (2j / (mpmath.mpc(z) - mpmath.conj(w))) ** p
    assert complex(bergman_kernel(H(z), H(w), p)) == pytest.approx(complex(ref), rel=1e-13)


def test_product_kernel_factorizes():
    K2 = complex(bergman_kernel(H(1j, 0.5 + 2j), H(0.2 + 1j, 1j), 4))
    K1a = complex(bergman_kernel(H(1j), H(0.2 + 1j), 4))
    K1b = complex(bergman_kernel(H(0.5 + 2j), H(1j), 4))
    assert K2 == pytest.approx(K1a * K1b, rel=1e-13)


def test_ball_kernel_at_origin():
    assert complex(bergman_kernel(DomainPoint.ball(0, 0), DomainPoint.ball(0, 0), 3)) == \
        pytest.approx(20 / math.pi ** 2, rel=1e-14)
    assert ball_constant(1, 1) == pytest.approx(2 / math.pi)


def test_siegel_genus_one_matches_halfplane():
    z, w = 0.1 + 0.9j, -0.4 + 1.3j
    a = complex(bergman_kernel(DomainPoint.siegel([[z]]), DomainPoint.siegel([[w]]), 5))
    b = complex(bergman_kernel(H(z), H(w), 5))
    assert a == pytest.approx(b, rel=1e-13)


def test_fock_kernel_diagonal():
    z = DomainPoint.fock(0.7 - 0.2j)
    K = fock_kernel(z, z, 3, area=1.5)
    assert math.exp(K.pointwise_log_norm(z, z, 1.5)) == pytest.approx(3 / 1.5, rel=1e-13)


def test_weights_below_threshold_rejected():
    assert p_min("halfplane") == 3 and p_min("siegel", 2) == 5 and p_min("ball", 2) == 1
    with pytest.raises(WeightError):
        check_weight("halfplane", 1, 2)
    with pytest.raises(WeightError):
        check_weight("halfplane", 1, 3.5)
    with pytest.raises(WeightError):
        bergman_kernel(DomainPoint.siegel(np.eye(2) * 1j), DomainPoint.siegel(np.eye(2) * 1j), 4)


@given(upper, upper, st.integers(3, 30))
def test_kernel_hermitian(z, w, p):
    a = bergman_kernel(H(z), H(w), p).value
    b = bergman_kernel(H(w), H(z), p).value.conjugate()
    assert a.isclose(b, 1e-12)


@given(upper, upper)
def test_kernel_cauchy_schwarz(z, w):
    # |K(z,w)|^2 <= K(z,z) K(w,w) for a reproducing kernel
    p = 6
    kzw = bergman_kernel(H(z), H(w), p).value.log_mag
    kzz = bergman_kernel(H(z), H(z), p).value.log_mag
    kww = bergman_kernel(H(w), H(w), p).value.log_mag
    assert 2 * kzw <= kzz + kww + 1e-12


# -- distances ------------------------------------------------------------------------------------
def test_distance_examples():
    assert hyperbolic_distance(H(1j), H(2j)) == pytest.approx(math.log(2), rel=1e-15)
    assert hyperbolic_distance(H(1j, 1j), H(2j, 4j)) == pytest.approx(math.sqrt(5) * math.log(2))
    assert hyperbolic_distance(DomainPoint.fock(0), DomainPoint.fock(1), 2.0) == pytest.approx(math.sqrt(math.pi))
    with pytest.raises(UnsupportedDomainError):
        Z = DomainPoint.siegel(np.eye(2) * 1j)
        hyperbolic_distance(Z, Z)


@given(upper, upper)
def test_cayley_transform_is_an_isometry(z, w):
    c = lambda u: (u - 1j) / (u + 1j)
    dh = hyperbolic_distance(H(z), H(w))
    db = hyperbolic_distance(DomainPoint.ball(c(z)), DomainPoint.ball(c(w)))
    if dh < 30:  # beyond that the disk coordinates lose resolution near the boundary
        assert db == pytest.approx(dh, rel=1e-7, abs=1e-9)


@given(upper, upper, st.integers(0, 2 ** 32 - 1))
def test_distance_invariant_under_sl2z(z, w, seed):
    from bergman_poincare.groups import random_word

    P = load_preset("sl2z")
    g = random_word(P, 5, np.random.default_rng(seed))
    d0 = hyperbolic_distance(H(z), H(w))
    d1 = hyperbolic_distance(act(g, H(z)), act(g, H(w)))
    assert d1 == pytest.approx(d0, rel=1e-8, abs=1e-8)


@given(upper, upper, upper)
def test_triangle_inequality(a, b, c):
    d = lambda u, v: hyperbolic_distance(H(u), H(v))
    assert d(a, c) <= d(a, b) + d(b, c) + 1e-9


# -- transport ----------------------------------------------------------------------------------
def test_bundle_power():
    assert bundle_power("halfplane", 1, 3, "K") == 6
    assert bundle_power("ball", 2, 3, "K") == 9
    with pytest.raises(ValueError):
        bundle_power("ball", 2, 3, "X")


def test_connection_form_is_dlog_h():
    z = np.array([0.3 + 0.8j])
    v = np.array([0.2 + 0.5j])
    # d/dt log h(z + t v) at t=0 is 2 Re(theta(v)) for real-valued h
    eps = 1e-6
    num = (log_h(H(*(z + eps * v))) - log_h(H(*(z - eps * v)))) / (2 * eps)
    assert 2 * connection_form("halfplane", 1, z, v).real == pytest.approx(num, rel=1e-8)


def test_transport_preserves_norm():
    P = load_preset("sl2z")
    geo = geodesic_from(element(P, [[3, 2], [1, 1]]))
    curve = geo.curve()
    st0 = parallel_transport(curve, 5, 1.0, t1=curve.t0)
    st1 = parallel_transport(curve, 5, 1.0)
    assert st1.converged
    assert st1.log_norm(curve, 5) == pytest.approx(st0.log_norm(curve, 5), abs=1e-10)


def test_transport_along_constant_curve():
    c = constant_curve(H(0.2 + 1j))
    assert parallel_transport(c, 7, 2.0 - 1j).a == pytest.approx(2.0 - 1j)


def test_transport_along_arbitrary_curve_vs_closed_form():
    # along the horizontal path x + i, theta = 1/(2i) and a(t) = exp(-p t / (2i))
    curve = Curve("halfplane", 1, lambda t: np.array([t + 1j]), lambda t: np.array([1.0 + 0j]), 0.0, 2.0)
    st = parallel_transport(curve, 4, 1.0)
    assert st.a == pytest.approx(cmath.exp(-4 * 2.0 / 2j), rel=1e-11)


@pytest.mark.parametrize("rows", [[[2, 1], [1, 1]], [[3, 2], [1, 1]], [[5, 2], [2, 1]], [[1, 1], [1, 2]]])
def test_holonomy_trivial_for_sl2z(rows):
    hol, st = holonomy(geodesic_from(element(load_preset("sl2z"), rows)), 6, "K")
    assert abs(hol - 1) < 1e-8 and st.converged


def test_picard_loxodromic_holonomy_sign():
    from bergman_poincare.groups.presets import PICARD_LOXODROMIC

    P = load_preset("picard")
    geo = geodesic_from(element(P, PICARD_LOXODROMIC))
    for p in (1, 2, 3):
        hol, _ = holonomy(geo, p)
        assert hol == pytest.approx((-1) ** p, abs=1e-8)
