import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergman_poincare.numerics import (ONE, ZERO, CompensatedAccumulator, LogComplex, Rectangle, VerticalRegion,
                                       adaptive_integrate, combine_partials, compensated_sum, gauss_legendre,
                                       integrate_fundamental_domain, log_sum, logsumexp_complex, reduce_shells,
                                       set_precision, wrap_angle, working_precision)
from bergman_poincare.numerics.precision import get_precision

finite = st.floats(-1e3, 1e3, allow_nan=False)
cplx = st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)


def test_zero_and_one():
    assert ZERO.is_zero and abs(ZERO) == 0.0
    assert complex(ONE) == 1
    assert LogComplex.from_complex(0) == ZERO
    assert (ZERO * ONE).is_zero
    with pytest.raises(ZeroDivisionError):
        ZERO ** -1


def test_wrap_angle_range():
    for x in (-7.0, -math.pi, 0.0, math.pi, 3 * math.pi, 10.0):
        w = wrap_angle(x)
        assert -math.pi < w <= math.pi
        assert cmath.isclose(cmath.exp(1j * w), cmath.exp(1j * x), abs_tol=1e-12)


def test_huge_and_tiny_magnitudes_survive():
    big = LogComplex(5000.0, 0.3)
    small = LogComplex(-5000.0, -1.0)
    prod = big * small
    assert prod.log_mag == pytest.approx(0.0) and prod.arg == pytest.approx(-0.7)
    # sum of values that overflow doubles individually
    s = big + LogComplex(5000.0, 0.3)
    assert s.log_mag == pytest.approx(5000.0 + math.log(2))
    sub = LogComplex.from_complex(complex(5e-324, 0))
    assert sub.log_mag == pytest.approx(math.log(5e-324), rel=1e-3)


def test_exact_cancellation_gives_zero():
    a = LogComplex(3.0, 0.0)
    assert (a + (-a)).is_zero


@given(cplx, cplx)
def test_log_arithmetic_matches_complex(a, b):
    la, lb = LogComplex.from_complex(a), LogComplex.from_complex(b)
    assert cmath.isclose(complex(la * lb), a * b, rel_tol=1e-12, abs_tol=1e-300)
    s = complex(la + lb)
    assert abs(s - (a + b)) <= 1e-12 * (abs(a) + abs(b)) + 1e-300
    if b != 0:
        assert cmath.isclose(complex(la / lb), a / b, rel_tol=1e-12)


@given(st.lists(st.floats(-1e10, 1e10, allow_nan=False), max_size=60))
def test_compensated_sum_is_correctly_rounded_for_reals(xs):
    assert compensated_sum(xs) == pytest.approx(math.fsum(xs), rel=1e-15, abs=1e-5)


def test_compensated_accumulator_beats_naive():
    xs = [1e16, 1.0, -1e16] * 100
    acc = CompensatedAccumulator()
    acc.extend(xs)
    assert acc.complex_value() == pytest.approx(100.0)
    assert sum(xs) != 100.0


def test_alternating_harmonic_partial_sum():
    n = 10**6
    k = np.arange(1, n + 1, dtype=float)
    s = compensated_sum(np.where(k % 2 == 1, 1.0, -1.0) / k)
    with mpmath.workdps(30):
        half = mpmath.mpf(1) / 2
        exact = mpmath.log(2) - half * (mpmath.digamma(half * (n + 2)) - mpmath.digamma(half * (n + 1)))
    assert abs(s - float(exact)) < 1e-15
    # the partial sum is ln 2 - 1/(2n) + 1/(4n^2) - ...; removing the leading tail term leaves 2.5e-13
    assert abs(s + 1 / (2 * n) - math.log(2)) < 1e-12
    assert abs(s - math.log(2)) > 1e-7


@given(st.lists(st.tuples(finite, st.floats(-4, 4)), min_size=1, max_size=40))
def test_logsumexp_matches_mpmath(pairs):
    L = np.array([complex(a, b) for a, b in pairs])
    got = logsumexp_complex(L)
    with mpmath.workdps(40):
        terms = [mpmath.exp(mpmath.mpc(x.real, x.imag)) for x in L]
        ref = mpmath.fsum(terms)
        scale = mpmath.fsum(abs(t) for t in terms)
        if abs(ref) < 1e-8 * scale:
            return  # cancellation far below double resolution is not resolvable
        d = mpmath.mpc(got.log_mag, got.arg) - mpmath.log(ref)
        assert abs(complex(mpmath.expm1(d))) < 1e-12 * (1 + float(scale / abs(ref)))


def test_reduce_shells_segments():
    L = np.log(np.array([1, 2, 3, -4, 5j], dtype=complex))
    lm, arg, la = reduce_shells(L, np.array([0, 1, 3, 5], dtype=np.int64))
    vals = np.exp(lm + 1j * arg)
    assert np.allclose(vals, [1, 5, -4 + 5j])
    assert np.allclose(np.exp(la), [1, 5, 9])


def test_combine_partials_order_of_record():
    parts = [LogComplex.from_complex(x) for x in (1e20, 3.0, -1e20)]
    assert complex(combine_partials(parts)) == pytest.approx(3.0)
    assert complex(log_sum(parts)) == pytest.approx(3.0)


def test_gauss_legendre_exactness():
    x, w = gauss_legendre(6)
    for k in range(12):
        assert np.dot(w, x ** k) == pytest.approx(1.0 / (k + 1), rel=1e-14)


def test_adaptive_1d_against_closed_forms():
    r = adaptive_integrate(np.exp, (0.0, 1.0), 1e-13)
    assert r.value == pytest.approx(math.e - 1, rel=1e-13)
    r = adaptive_integrate(lambda x: 1.0 / (1 + x * x), (-30.0, 30.0), 1e-12)
    assert r.value == pytest.approx(2 * math.atan(30.0), rel=1e-11)
    c = adaptive_integrate(lambda x: np.exp(1j * x), (0.0, math.pi), 1e-12)
    assert complex(c.value) == pytest.approx(2j, abs=1e-12)


def test_adaptive_2d_regions():
    r = adaptive_integrate(lambda x, y: x * y * y, Rectangle(0, 1, 0, 2), 1e-12)
    assert r.value == pytest.approx(0.5 * 8 / 3, rel=1e-12)
    disk = VerticalRegion(-1, 1, lambda x: -np.sqrt(1 - x * x), lambda x: np.sqrt(1 - x * x))
    r = adaptive_integrate(lambda x, y: np.ones_like(x), disk, 1e-9, order=10)
    assert r.value == pytest.approx(math.pi, rel=1e-7)


def test_budget_exhaustion_is_reported():
    r = adaptive_integrate(lambda x: np.abs(np.sin(1 / np.maximum(x, 1e-12))), (1e-6, 1.0), 1e-14,
                           max_evals=2000)
    assert not r.converged


def test_fundamental_domain_area():
    # hyperbolic area of the modular fundamental domain is pi / 3
    r = integrate_fundamental_domain(lambda x, y: 1.0 / y ** 2, 1e-10)
    assert r.value == pytest.approx(math.pi / 3, rel=1e-9)


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        adaptive_integrate(np.exp, (0, 1), 0.0)


def test_precision_switch_routes_through_mpmath():
    assert get_precision() == 53
    with working_precision(128):
        a = LogComplex.from_complex(mpmath.mpf(1) / 3)
        assert isinstance(a.log_mag, mpmath.mpf)
        assert abs(a.to_complex() * 3 - 1) < mpmath.mpf(2) ** -120
    assert get_precision() == 53
    with pytest.raises(ValueError):
        set_precision(24)
