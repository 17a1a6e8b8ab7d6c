from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from oracles import elliptic_E_quad
from sigmainv.closedform import (E_CONST, ELLIPTIC_MODULUS, PI, TWO_PI, ClosedFormSum, ClosedFormValue, cf,
                                 cf_eval, elliptic_E, factorize, sqrt)
from sigmainv.errors import DomainError


def test_elliptic_E_matches_quadrature():
    with mpmath.workdps(40):
        k = mpmath.sqrt(8) / 3
        assert abs(elliptic_E(ELLIPTIC_MODULUS, 40) - elliptic_E_quad(k, 40)) < mpmath.mpf(10) ** -35


@pytest.mark.parametrize("k", ["0", "0.3", "0.9", "0.999"])
def test_elliptic_E_matches_mpmath_ellipe(k):
    with mpmath.workdps(30):
        want = mpmath.ellipe(mpmath.mpf(k) ** 2)
        assert abs(elliptic_E(mpmath.mpf(k), 30) - want) < mpmath.mpf(10) ** -25


def test_elliptic_E_endpoint_and_domain():
    assert elliptic_E(1, 20) == 1
    with pytest.raises(DomainError):
        elliptic_E(Fraction(3, 2))


def test_square_root_form_canonicalizes():
    assert sqrt(12) == 2 * sqrt(3)
    assert cf(1, 8) == cf(2, 2)
    assert (sqrt(2) * sqrt(2)) == 2
    assert (TWO_PI**3).render() == "8*pi^3"
    assert cf(Fraction(43, 108), 43) * TWO_PI**3 == cf(Fraction(86, 27), 43, 3)


def test_equality_distinguishes_pi_and_E_powers():
    assert PI**2 != PI**3
    assert 12 * PI**2 * E_CONST != 12 * PI**2
    assert hash(sqrt(6) * PI**3) == hash(cf(1, 6, 3))


def test_render_and_evaluate():
    v = cf(Fraction(3, 2), 3) ** 3
    assert v == cf(Fraction(27, 8), 27) ** 1
    assert str(cf_eval(TWO_PI, 12)) == "6.28318530718"
    assert abs(float(16 * PI**4) - 16 * float(mpmath.pi) ** 4) < 1e-9


def test_zero_and_negative_powers():
    zero = ClosedFormValue(0)
    assert zero.is_zero
    with pytest.raises(ZeroDivisionError):
        zero ** -1
    with pytest.raises(DomainError):
        ClosedFormValue.from_rational(-2) ** Fraction(1, 2)


def test_sum_collapses_like_terms():
    s = ClosedFormSum.of([PI**2, PI**2, -2 * PI**2]).collapse()
    assert s == 0
    mixed = ClosedFormSum.of([2 * PI**2, 6 * PI**4])
    assert abs(float(mixed) - (2 * float(mpmath.pi) ** 2 + 6 * float(mpmath.pi) ** 4)) < 1e-9


def test_factorize():
    assert factorize(1) == ()
    assert factorize(2**5 * 3 * 10007**2) == ((2, 5), (3, 1), (10007, 2))
    with pytest.raises(DomainError):
        factorize(0)


rationals = st.fractions(min_value=Fraction(1, 1000), max_value=1000)


@settings(max_examples=200, deadline=None)
@given(rationals, rationals, st.fractions(min_value=-3, max_value=3, max_denominator=6))
def test_exact_arithmetic_matches_floats(a, b, e):
    va, vb = ClosedFormValue.from_rational(a), ClosedFormValue.from_rational(b)
    assert (va * vb).to_rational() == a * b
    got = float(va ** e * PI)
    want = float(a) ** float(e) * float(mpmath.pi)
    assert abs(got - want) <= 1e-9 * abs(want)
