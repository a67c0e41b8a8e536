import math

import pytest
from hypothesis import given, strategies as st

from incmac.core import DomainError, PoleError, Tolerances
from incmac.gamma import (
    gamma,
    incomplete_gamma_asymptotic,
    macdonald_k,
    pochhammer,
    upper_incomplete_gamma,
)
from incmac.quadrature import integrate_adaptive

from frozen import E1_1, GAMMA_0_3, GAMMA_M15_2, K0_3

TIGHT = Tolerances(abs_tol=1e-300, rel_tol=1e-12, max_depth=120)


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def _gamma_tail_quadrature(a, x):
    """Independent oracle: adaptive quadrature of the defining integral."""

    def f(tau):
        e = (a - 1.0) * math.log(tau) - tau
        return math.exp(e) if e > -745.0 else 0.0

    return integrate_adaptive(
        f, x, math.inf, TIGHT, points=(x + 1.0, x + 5.0, x + 25.0, max(x, a))
    ).value


class TestGamma:
    def test_half_integer(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_factorial(self):
        assert gamma(5) == 24.0

    @pytest.mark.parametrize("a", [0.0, -1.0, -2.0, -7.0])
    def test_poles(self, a):
        with pytest.raises(PoleError):
            gamma(a)

    def test_accuracy_across_range(self):
        # reflection + recursion exact values
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)
        assert gamma(7.5) == pytest.approx(1871.254305797788346, rel=1e-13)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            gamma(200.0)


class TestUpperIncompleteGamma:
    def test_order_one_closed_form(self):
        assert upper_incomplete_gamma(1.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-14)

    def test_exponential_integral_anchor(self):
        assert _rel(upper_incomplete_gamma(0.0, 1.0), E1_1) < 1e-12

    def test_frozen_negative_order(self):
        assert _rel(upper_incomplete_gamma(-1.5, 2.0), GAMMA_M15_2) < 1e-12

    def test_frozen_order_zero_argument_three(self):
        assert _rel(upper_incomplete_gamma(0.0, 3.0), GAMMA_0_3) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            upper_incomplete_gamma(1.0, 0.0)
        with pytest.raises(DomainError):
            upper_incomplete_gamma(1.0, -2.0)
        with pytest.raises(DomainError):
            upper_incomplete_gamma(math.inf, 1.0)

    @pytest.mark.parametrize("a", [-3.0, -2.5, -1.5, -0.5, 0.0, 0.5, 2.0])
    @pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
    def test_against_defining_integral(self, a, x):
        # monitors the recurrence/continued-fraction split for cancellation
        assert _rel(upper_incomplete_gamma(a, x), _gamma_tail_quadrature(a, x)) < 1e-11

    @pytest.mark.parametrize("a", [-2.5, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0])
    @pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
    def test_upward_recurrence(self, a, x):
        lhs = upper_incomplete_gamma(a + 1.0, x)
        rhs = a * upper_incomplete_gamma(a, x) + x**a * math.exp(-x)
        assert _rel(lhs, rhs) < 1e-10

    @pytest.mark.parametrize("a", [0.5, 1.5, 3.0])
    @pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
    def test_complement_reproduces_gamma(self, a, x):
        lower = integrate_adaptive(
            lambda tau: math.exp((a - 1.0) * math.log(tau) - tau), 1e-300, x, TIGHT
        ).value
        assert _rel(upper_incomplete_gamma(a, x) + lower, gamma(a)) < 1e-10

    def test_strictly_decreasing_in_x(self):
        for a in (-1.5, 0.0, 2.0):
            values = [upper_incomplete_gamma(a, x) for x in (0.3, 1.0, 3.0, 9.0)]
            assert all(v1 > v2 for v1, v2 in zip(values, values[1:]))


class TestIncompleteGammaAsymptotic:
    def test_single_term_exact_at_order_one(self):
        # (1-a)_m vanishes for m >= 1 when a = 1, so m_max = 0 is exact
        assert incomplete_gamma_asymptotic(1.0, 10.0, 0) == pytest.approx(
            math.exp(-10.0), rel=1e-15
        )

    def test_against_convergent_evaluator_x20(self):
        # with five terms at x = 20 the first omitted term is ~2.5e-6 of the
        # value; agreement is bounded by that optimal-truncation scale
        got = incomplete_gamma_asymptotic(0.5, 20.0, 5)
        want = upper_incomplete_gamma(0.5, 20.0)
        assert _rel(got, want) < 1e-5
        first_omitted = pochhammer(0.5, 6) / 20.0**6
        assert _rel(got, want) < 3.0 * first_omitted

    def test_order_two_closed_form(self):
        want = 31.0 * math.exp(-30.0)  # Gamma(2, x) = (x+1) e^-x
        assert _rel(incomplete_gamma_asymptotic(2.0, 30.0, 3), want) < 1e-10

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_approaches_exact_at_x40(self, a):
        got = incomplete_gamma_asymptotic(a, 40.0, 60)
        assert _rel(got, upper_incomplete_gamma(a, 40.0)) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            incomplete_gamma_asymptotic(1.0, -1.0, 4)


class TestPochhammer:
    @pytest.mark.parametrize("a,m,want", [(3.0, 2, 12.0), (-0.5, 3, -0.375), (0.0, 4, 0.0), (2.5, 0, 1.0)])
    def test_examples(self, a, m, want):
        assert pochhammer(a, m) == want

    @given(st.floats(-10, 10), st.integers(0, 20))
    def test_recurrence(self, a, m):
        assert pochhammer(a, m + 1) == pytest.approx(pochhammer(a, m) * (a + m), rel=1e-12, abs=1e-300)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            pochhammer(300.0, 200)

    def test_rejects_negative_m(self):
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)


class TestMacdonaldK:
    def test_half_order_closed_form(self):
        want = math.sqrt(0.5 * math.pi) * math.exp(-1.0)
        assert _rel(macdonald_k(0.5, 1.0), want) < 1e-12

    def test_frozen_value(self):
        assert _rel(macdonald_k(0.0, 3.0), K0_3) < 1e-11

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.0, 5.0])
    @pytest.mark.parametrize("z", [0.5, 1.0, 3.0, 8.0])
    def test_even_in_order(self, nu, z):
        assert _rel(macdonald_k(nu, z), macdonald_k(-nu, z)) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            macdonald_k(0.0, 0.0)
        with pytest.raises(DomainError):
            macdonald_k(0.0, -1.0)

    def test_underflow_to_zero(self):
        assert macdonald_k(0.0, 800.0) == 0.0

    def test_small_argument_blowup(self):
        # K grows like -ln z at order 0; quadrature must still track it
        assert _rel(macdonald_k(0.0, 1e-6), 13.931442073626419) < 1e-11
