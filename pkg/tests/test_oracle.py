"""Tests for the independent oracle paths.

Expected values here come from closed forms evaluated inline (double
factorials, Gamma-function expressions, integral representations via
scipy.integrate) or from frozen high-precision constants -- never from the
fast paths the oracle exists to check.
"""

import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from glancelab import oracle

# first zero of J_0 and the slope there
J0_ZERO_1 = 2.40482555769577276862
J1_AT_J0_ZERO_1 = 0.51914749728946678814
# first zero of Ai
AIRY_ZERO_1 = -2.33810741045976703849
# the turning-point variable at which z = 2
ZETA_AT_Z2 = -1.01810488856711602008


def bessel_by_integral(n, x):
    """J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt, evaluated adaptively."""
    val, err = quad(lambda t: math.cos(n * t - x * math.sin(t)), 0.0, math.pi,
                    limit=400, epsabs=1e-13, epsrel=1e-12)
    assert err < 1e-9
    return val / math.pi


def legendre_equator_closed(l, m):
    """Orthonormal equator value by the double-factorial closed form."""
    if (l + m) % 2 == 1:
        return 0.0
    # (l+m-1)!!/(l-m)!! in log space; (2k-1)!! = (2k)!/(2^k k!), (2k)!! = 2^k k!
    a, b = l + m - 1, l - m   # a odd (or -1), b even
    log_odd = (math.lgamma(a + 2) - (a + 1) / 2 * math.log(2.0)
               - math.lgamma((a + 1) / 2 + 1)) if a >= 1 else 0.0
    log_even = b / 2 * math.log(2.0) + math.lgamma(b / 2 + 1)
    log_norm = 0.5 * (math.log(2 * l + 1) - math.log(4 * math.pi)
                      + math.lgamma(l - m + 1) - math.lgamma(l + m + 1))
    sign = -1.0 if ((l + m) // 2) % 2 else 1.0
    return sign * math.exp(log_norm + log_odd - log_even)


class TestBesselSeries:
    def test_frozen_anchors(self):
        assert abs(oracle.bessel_series(0, J0_ZERO_1)) < 1e-14
        assert oracle.bessel_series(1, J0_ZERO_1) == pytest.approx(
            J1_AT_J0_ZERO_1, abs=1e-14)
        assert oracle.bessel_series(100, 130.0) == pytest.approx(
            0.08084377958789141517, abs=1e-14)

    @pytest.mark.parametrize("n,x", [(0, 1.0), (3, 2.0), (10, 12.5),
                                     (40, 35.0), (100, 130.0), (7, 0.3)])
    def test_against_integral_representation(self, n, x):
        assert oracle.bessel_series(n, x) == pytest.approx(
            bessel_by_integral(n, x), abs=5e-12)

    def test_at_origin(self):
        assert oracle.bessel_series(0, 0.0) == 1.0
        assert oracle.bessel_series(5, 0.0) == 0.0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            oracle.bessel_series(-1, 1.0)
        with pytest.raises(ValueError):
            oracle.bessel_series(1, -1.0)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(min_value=0.5, max_value=40.0))
    def test_parseval_identity(self, x):
        # J_0^2 + 2 sum_{k>=1} J_k^2 = 1  (DLMF 10.12.5 at theta = pi/2... 10.23.3)
        total = oracle.bessel_series(0, x) ** 2
        for k in range(1, int(x) + 40):
            total += 2.0 * oracle.bessel_series(k, x) ** 2
        assert total == pytest.approx(1.0, abs=1e-11)

    def test_derivative_identity(self):
        # J_0' = -J_1 at a generic point
        x = 3.7
        assert oracle.bessel_prime_series(0, x) == pytest.approx(
            -oracle.bessel_series(1, x), abs=1e-14)


class TestLegendreRecurrence:
    @pytest.mark.parametrize("l,m", [(0, 0), (1, 1), (2, 0), (2, 2), (3, 1),
                                     (4, 2), (10, 4), (31, 17), (200, 120),
                                     (1501, 1401), (8000, 7804)])
    def test_against_closed_form(self, l, m):
        # lgamma arguments reach ~1.6e4 at the largest degree, so ~1e-11
        # relative noise in the exponent is intrinsic to the closed form
        tol = 1e-12 if l < 100 else 1e-9
        assert oracle.legendre_recurrence(l, m) == pytest.approx(
            legendre_equator_closed(l, m), rel=tol)

    def test_specific_values(self):
        # Pbar_2^0(0) = -(1/4) sqrt(5/pi), Pbar_3^1(0) = (3/2) sqrt(7/(48 pi))
        assert oracle.legendre_recurrence(2, 0) == pytest.approx(
            -0.25 * math.sqrt(5.0 / math.pi), rel=1e-13)
        assert oracle.legendre_recurrence(3, 1) == pytest.approx(
            1.5 * math.sqrt(7.0 / (48.0 * math.pi)), rel=1e-13)

    def test_odd_parity_vanishes(self):
        assert oracle.legendre_recurrence(3, 0) == 0.0
        assert oracle.legendre_recurrence(10, 7) == 0.0

    def test_rejects_bad_orders(self):
        with pytest.raises(ValueError):
            oracle.legendre_recurrence(2, 3)
        with pytest.raises(ValueError):
            oracle.legendre_recurrence(2, -1)


class TestAiryODE:
    def test_origin_constants_match_gamma(self):
        # Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
        assert oracle.AIRY_AT_ZERO == pytest.approx(
            3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0), rel=1e-15)
        assert oracle.AIRY_PRIME_AT_ZERO == pytest.approx(
            -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0), rel=1e-15)

    def test_first_airy_zero(self):
        xs, ais = oracle.airy_ode_check(x_lo=AIRY_ZERO_1, x_hi=0.0, n_samples=2)
        assert xs[0] == AIRY_ZERO_1
        assert abs(ais[0]) < 1e-11


class TestTurningPointODE:
    def test_anchor_z_equals_two(self):
        zetas, zs = oracle.olver_ode_check(zeta_lo=ZETA_AT_Z2, n_samples=3)
        assert zs[-1] == pytest.approx(2.0, abs=1e-9)

    def test_monotone_increasing_z(self):
        zetas, zs = oracle.olver_ode_check(zeta_lo=-8.0, n_samples=30)
        assert all(b > a for a, b in zip(zs, zs[1:]))


class TestWeylCount:
    def test_frozen_small_counts(self):
        # zeros of J_n below 10, weighted 2 for n >= 1:
        # n=0: {2.405, 5.520, 8.654}; n=1: {3.832, 7.016}; n=2: {5.136, 8.417};
        # n=3: {6.380, 9.761}; n=4: {7.588}; n=5: {8.771}; n=6: {9.936}
        assert oracle.weyl_count(10.0) == 3 + 2 * (2 + 2 + 2 + 1 + 1 + 1)
        assert oracle.weyl_count(5.0) == 1 + 2 * 1

    def test_window_consistency(self):
        assert (oracle.weyl_count(10.0, 5.0)
                == oracle.weyl_count(10.0) - oracle.weyl_count(5.0))

    def test_agrees_with_smooth_law(self):
        lam = 600.0
        smooth = lam * lam / 4.0 - lam / 2.0
        assert oracle.weyl_count(lam) == pytest.approx(smooth, rel=5e-3)


class TestQuadratureNorm:
    def test_closed_form_at_first_zero(self):
        got, closed = oracle.disk_quadrature_norm(0, J0_ZERO_1)
        assert closed == pytest.approx(0.5 * J1_AT_J0_ZERO_1 ** 2, rel=1e-13)
        assert got == pytest.approx(closed, rel=1e-10)
