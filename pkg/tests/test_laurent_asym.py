import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from noncrossing.laurent_asym import (
    BiPoly,
    LaurentPoly,
    ZeroPolynomialError,
    algorithm_a_dump,
    c_coefficients,
    c_top_coeff,
    claim_one_value,
    determinant_violations,
    e_series,
    elimination_multiplier,
    gamma_halfint_det,
    gamma_halfint_det_closed_form,
    laurent_det,
    leading_term,
    lemma_leading_expected,
    lemma_two_violations,
    leading_term_violations,
    m_bipoly,
    m_coeff,
    run_algorithm_a,
    stability_violations,
    theorem_a_form,
    theorem_a_from_elimination,
    triangle,
)
from noncrossing.scalars import PiPowerScalar


@pytest.mark.parametrize("x, r, expected", [(1, 1, 0), (3, 1, 8), (2, 3, -5)])
def test_triangle(x, r, expected):
    assert triangle(x, r) == expected


def test_m_coeff_examples():
    assert all(m_coeff(i, j, 0) == 0 for i in range(1, 4) for j in range(1, 4))
    assert m_coeff(1, 1, 1) == (0 - 1) - (16 - 1)
    assert m_coeff(1, 1, 2) == (-1) * (-9) - 15 * 7
    assert m_coeff(1, 1, 2) == -96


@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 9))
def test_m_coeff_symmetric(i, j, h):
    assert m_coeff(i, j, h) == m_coeff(j, i, h)


def test_m_bipoly_h1():
    assert m_bipoly(1) == BiPoly({(1, 1): -16})


def test_m_bipoly_h2_top_coefficient():
    assert c_coefficients(2)[(1, 0)] == 128 == c_top_coeff(2, 1, 0)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 7))
def test_m_bipoly_evaluates_to_m_coeff(i, j, h):
    assert m_bipoly(h)(i, j) == m_coeff(i, j, h)


def test_m_bipoly_structure():
    for h in range(1, 8):
        quotient = (-m_bipoly(h)).divide_by_ij()
        assert all(a % 2 == 0 and b % 2 == 0 for a, b in quotient.terms)


def test_divide_by_ij_rejects():
    with pytest.raises(ArithmeticError):
        BiPoly({(2, 0): 1}).divide_by_ij()


@pytest.mark.parametrize("h, a, b, expected", [(1, 0, 0, 16), (2, 1, 0, 128), (2, 0, 1, 128)])
def test_c_top_coeff_examples(h, a, b, expected):
    assert c_top_coeff(h, a, b) == expected


def test_c_top_coeff_matches_claim_one_example():
    # i=1, j=2: 2 Gamma(5) 4^3 / (Gamma(5) Gamma(2))
    assert claim_one_value(1, 2) == Fraction(2 * math.factorial(4) * 4**3, math.factorial(4) * math.factorial(1))
    assert claim_one_value(1, 2) == c_top_coeff(2, 0, 1)


def test_c_top_coeff_rejects_lower_layers():
    with pytest.raises(ValueError):
        c_top_coeff(3, 0, 0)


def test_top_layer_is_binomial():
    # top homogeneous part of m_h is 4^h((i-j)^{2h} - (i+j)^{2h})
    for h in range(1, 9):
        for a in range(h):
            b = h - 1 - a
            assert c_top_coeff(h, a, b) == 2 * 4**h * math.comb(2 * h, 2 * b + 1)


def test_e_series_examples():
    e = e_series(1, 1, 5)
    assert e[0] == 0
    assert e[1] == 1
    assert e[2] == Fraction(-3, 16)


def test_leading_term_examples():
    p = LaurentPoly.from_map({1: 1, 3: 5}, 4)
    assert leading_term(p) == (1, 1)
    assert leading_term(e_series(1, 1, 5)) == (1, 1)
    with pytest.raises(ZeroPolynomialError, match="zero polynomial"):
        leading_term(LaurentPoly.from_map({}, 3))


@pytest.mark.parametrize("i, j, expected", [
    (1, 1, (1, Fraction(1))),
    (1, 2, (2, Fraction(-3, 2))),
    (2, 2, (3, Fraction(15, 4))),
])
def test_lemma_leading_expected(i, j, expected):
    assert lemma_leading_expected(i, j) == expected


def test_multiplier_empty_product():
    assert elimination_multiplier(5, 1) == -5
    # (n+1) prod_{r<=n} ((n+1) △ r) = (2n+1)!, so the pivot row gets multiplier -1
    for t in range(1, 6):
        assert elimination_multiplier(t, t) == -1


def test_algorithm_a_k2_is_identity():
    run = run_algorithm_a(2, 3)
    assert run.entry(1, 1) == e_series(1, 1, 3)
    assert leading_term(run.entry(1, 1)) == (1, 1)


def test_algorithm_a_k3():
    run = run_algorithm_a(3, 7)
    assert leading_term(run.entry(1, 2)) == (2, Fraction(-3, 2))
    assert leading_term(run.entry(2, 2)) == (3, Fraction(15, 4))


def test_algorithm_a_rejects_small_H():
    with pytest.raises(ValueError):
        run_algorithm_a(3, 4)
    with pytest.raises(ValueError):
        run_algorithm_a(1, 5)


def test_step_one_matches_hand_formula():
    # after t=1, m^1(i,j) = m(i,j) - i m(1,j) - j m(i,1) + i j m(1,1)
    H = 10
    run = run_algorithm_a(4, H, capture_steps=True)
    after = run.steps[0].matrix
    for i in range(1, 4):
        for j in range(1, 4):
            ci = i if i > 1 else 0
            cj = j if j > 1 else 0
            for h in range(H + 1):
                m = m_coeff(i, j, h) - ci * m_coeff(1, j, h) - cj * m_coeff(i, 1, h) + ci * cj * m_coeff(1, 1, h)
                assert after[i - 1][j - 1][h] == Fraction(m * (-1) ** h, 16**h * math.factorial(h))


@pytest.mark.parametrize("k", range(2, 7))
def test_invariants(k):
    run = run_algorithm_a(k, capture_steps=True)
    assert leading_term_violations(run) == []
    assert lemma_two_violations(run) == []
    assert stability_violations(run) == []


@pytest.mark.parametrize("k", range(2, 6))
def test_determinant_invariance(k):
    assert determinant_violations(run_algorithm_a(k)) == []


def test_laurent_det_of_diagonal():
    a = LaurentPoly.from_map({1: 2}, 4)
    b = LaurentPoly.from_map({1: 3, 2: 1}, 4)
    zero = LaurentPoly.from_map({}, 4)
    assert laurent_det([[a, zero], [zero, b]]) == LaurentPoly.from_map({2: 6, 3: 2}, 4)


@pytest.mark.parametrize("k, expected", [
    (2, PiPowerScalar(Fraction(1, 2), 1)),
    (3, PiPowerScalar(Fraction(3, 8), 2)),
    (4, PiPowerScalar(Fraction(45, 32), 3)),
])
def test_gamma_halfint_det(k, expected):
    assert gamma_halfint_det(k) == expected


def test_gamma_det_k3_by_hand():
    # Gamma(3/2) Gamma(7/2) - Gamma(5/2)^2 = (1/2)(15/8) pi - (3/4)^2 pi
    assert gamma_halfint_det(3).q == Fraction(1, 2) * Fraction(15, 8) - Fraction(3, 4) ** 2


def test_vandermonde_is_a_product():
    from noncrossing.bessel_series import cofactor_det
    from noncrossing.scalars import superfactorial
    for size in range(1, 8):
        vdm = [[i ** (j - 1) for j in range(1, size + 1)] for i in range(1, size + 1)]
        assert cofactor_det(vdm) == superfactorial(size - 1)


@pytest.mark.parametrize("k, constant, rate, power", [
    (2, PiPowerScalar(Fraction(1, 2), -1), 2, Fraction(3, 2)),
    (3, PiPowerScalar(Fraction(3, 8), -2), 4, Fraction(5)),
    (4, PiPowerScalar(Fraction(45, 32), -3), 6, Fraction(21, 2)),
])
def test_theorem_a_form(k, constant, rate, power):
    form = theorem_a_form(k)
    assert (form.constant, form.exp_rate, form.power) == (constant, rate, power)


@pytest.mark.parametrize("k", range(2, 7))
def test_theorem_a_from_elimination(k):
    assert theorem_a_from_elimination(k) == theorem_a_form(k)


def test_closed_form_matches_direct_up_to_12():
    for k in range(2, 13):
        assert gamma_halfint_det(k) == gamma_halfint_det_closed_form(k)


def test_dump_schema():
    run = run_algorithm_a(3, 6, capture_steps=True)
    dump = algorithm_a_dump(run)
    assert dump["k"] == 3 and dump["H"] == 6
    assert [s["t"] for s in dump["steps"]] == [1, 2]
    assert dump["steps"][-1]["matrix"][0][1]["2"] == "-3/2"
    assert dump["leading"][1][1] == {"order": 3, "coeff": "15/4"}
