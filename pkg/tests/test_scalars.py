from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from noncrossing.scalars import (
    PiPowerScalar,
    double_factorial_odd,
    gamma_half,
    scalar_mul,
    to_float,
)

half = Fraction(1, 2)


def test_gamma_half_examples():
    assert gamma_half(0) == PiPowerScalar(Fraction(1), 1)
    # Gamma(x+1) = x Gamma(x), stepped up from Gamma(1/2) = sqrt(pi)
    g = PiPowerScalar(Fraction(1), 1)
    for n in range(3):
        g = g * (n + half)
        if n == 0:
            assert gamma_half(1) == g == PiPowerScalar(half, 1)
    assert gamma_half(3) == g == PiPowerScalar(Fraction(15, 8), 1)


def test_gamma_half_recurrence_up_to_200():
    for n in range(200):
        assert gamma_half(n + 1) == gamma_half(n) * (n + half)


def test_gamma_half_matches_mpmath():
    for n in (0, 1, 5, 17):
        assert to_float(gamma_half(n), 100) == pytest.approx(float(mpmath.gamma(n + 0.5)), rel=1e-14)


@pytest.mark.parametrize("n, expected", [(0, 1), (3, 1 * 3 * 5), (5, 1 * 3 * 5 * 7 * 9)])
def test_double_factorial_odd(n, expected):
    assert double_factorial_odd(n) == expected


def test_scalar_mul_examples():
    root_pi = PiPowerScalar(Fraction(1), 1)
    assert scalar_mul(root_pi, root_pi) == PiPowerScalar(Fraction(1), 2)
    assert scalar_mul(PiPowerScalar(half, 1), PiPowerScalar(Fraction(3, 4), 1)) == PiPowerScalar(Fraction(3, 8), 2)
    zero = scalar_mul(PiPowerScalar(Fraction(0), 3), PiPowerScalar(Fraction(7), 5))
    assert zero.q == 0 and zero.e == 0


def test_canonical_zero_and_radicand():
    assert PiPowerScalar(Fraction(0), 7, 3) == PiPowerScalar(Fraction(0))
    assert PiPowerScalar(Fraction(1), 0, 12) == PiPowerScalar(Fraction(2), 0, 3)
    assert PiPowerScalar.sqrt_int(5) * PiPowerScalar.sqrt_int(5) == PiPowerScalar.rational(5)


def test_mixed_addition_is_an_error():
    with pytest.raises(ValueError):
        PiPowerScalar(Fraction(1), 1) + PiPowerScalar(Fraction(1), 2)
    assert PiPowerScalar(half, 1) + PiPowerScalar(half, 1) == PiPowerScalar(Fraction(1), 1)


def test_to_float_examples():
    assert to_float(PiPowerScalar(Fraction(1), 1), 53) == pytest.approx(1.7724538509, abs=1e-10)
    assert to_float(PiPowerScalar(half), 53) == mpmath.mpf(0.5)
    assert to_float(PiPowerScalar(Fraction(24), -2), 53) == pytest.approx(7.6394372684, abs=1e-10)


def test_to_float_rejects_low_precision():
    with pytest.raises(ValueError):
        to_float(PiPowerScalar(half), 52)


def test_to_float_relative_error_bound():
    bits = 200
    x = PiPowerScalar(Fraction(45, 32), -3, 3)
    with mpmath.workprec(400):
        truth = mpmath.mpf(45) / 32 * mpmath.sqrt(3) * mpmath.pi ** mpmath.mpf(-1.5)
        got = mpmath.mpf(to_float(x, bits))
        assert abs(got / truth - 1) <= mpmath.mpf(2) ** (1 - bits)


fractions = st.fractions(max_denominator=10**6).filter(lambda f: abs(f) < 10**9)


@given(fractions, fractions, fractions)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b).denominator >= 1


scalars = st.builds(
    PiPowerScalar,
    st.fractions(max_denominator=1000).filter(lambda f: f != 0),
    st.integers(-6, 6),
    st.sampled_from([1, 2, 3, 5, 6]),
)


@given(scalars, scalars, scalars)
def test_scalar_mul_associative_commutative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * b) / b == a


@given(
    st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000),
    st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000),
    st.integers(-4, 4),
    st.sampled_from([1, 2, 3, 7]),
    st.sampled_from([1, 2, 3, 7]),
)
def test_to_float_monotone(qa, qb, e, ra, rb):
    a, b = PiPowerScalar(qa, e, ra), PiPowerScalar(qb, e, rb)
    # same pi power: compare exactly through the squared rational part
    if a.squared_rational_part() < b.squared_rational_part():
        assert to_float(a, 80) <= to_float(b, 80)
    elif a.squared_rational_part() > b.squared_rational_part():
        assert to_float(a, 80) >= to_float(b, 80)
