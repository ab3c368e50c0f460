"""Tests for the bracket operators on jets and on expansions."""

from fractions import Fraction

import pytest

from siegelops.brackets import (delta1_qexp, eis1_qexp, scalar_bracket_jet,
                                scalar_bracket_q, sigma_power_sum, vector_bracket_jet,
                                vector_bracket_q, weight_symbol)
from siegelops.jets import JetPoly, jet_det_partial, jet_mod_symbol
from siegelops.theta import theta_pow8_sum, tnull_qexp

K = weight_symbol("k")
H = weight_symbol("h")
ELL = weight_symbol("ell")
F = JetPoly.symbol("F")
G = JetPoly.symbol("G")
HH = JetPoly.symbol("H")


def test_bracket_of_form_with_itself_vanishes():
    m = vector_bracket_jet(F, K, F, K, 2)
    assert all(e.is_zero() for row in m for e in row)


def test_antisymmetry_symbolic_weights():
    m1 = vector_bracket_jet(F, K, G, H, 2)
    m2 = vector_bracket_jet(G, H, F, K, 2)
    for i in range(2):
        for j in range(2):
            assert (m1[i][j] + m2[i][j]).is_zero()


def test_bilinearity_in_first_slot():
    lhs = vector_bracket_jet(F + F, K, G, H, 2)
    rhs = vector_bracket_jet(F, K, G, H, 2)
    for i in range(2):
        for j in range(2):
            assert lhs[i][j] == rhs[i][j].scale(Fraction(2))


@pytest.mark.parametrize("n", [2, 3])
def test_self_power_bracket_vanishes(n):
    """[F, F^n] = 0 as a jet identity (weight of F^n is n k)."""
    fn = F ** n
    kn = K.scale(Fraction(n))
    m = vector_bracket_jet(F, K, fn, kn, 2)
    assert all(e.is_zero() for row in m for e in row)
    assert scalar_bracket_jet(F, K, fn, kn, 2).is_zero()


def test_restriction_to_zero_locus():
    """[F, G] reduces to h^g G^g det(dF) modulo the bare symbol F (g = 2)."""
    br = scalar_bracket_jet(F, K, G, H, 2)
    expect = H * H * G * G * jet_det_partial("F", 2)
    assert jet_mod_symbol(br, "F") == expect


def test_square_factor_divisibility():
    """Every monomial of [H^2 F, G] carries the symbol H at least g times."""
    op = HH * HH * F
    w_op = K + ELL.scale(Fraction(2))
    br = scalar_bracket_jet(op, w_op, G, H, 2)
    assert not br.is_zero()
    assert br.symbol_count("H") >= 2


def test_equal_factor_divisibility():
    """[H F, H G] is likewise divisible by H^g."""
    br = scalar_bracket_jet(HH * F, K + ELL, HH * G, H + ELL, 2)
    assert not br.is_zero()
    assert br.symbol_count("H") >= 2


def test_eisenstein_coefficients():
    e4 = eis1_qexp(4, 200)
    assert e4.coefficient(1) == 240
    assert e4.coefficient(2) == 240 * sigma_power_sum(3, 2)
    e6 = eis1_qexp(6, 200)
    assert e6.coefficient(2) == -504 * 33
    with pytest.raises(ValueError):
        eis1_qexp(8)


def test_discriminant_normalization():
    e4, e6 = eis1_qexp(4, 80), eis1_qexp(6, 80)
    diff = e4 ** 3 - e6 ** 2
    assert diff.coefficient(0) == 0
    assert diff.coefficient(1) == 1728
    d = delta1_qexp(80)
    assert d.coefficient(1) == 1


def test_genus1_bracket_proportional_to_discriminant():
    """{E4, E6} = 6 E6 dE4 - 4 E4 dE6 is 3456 times the discriminant series."""
    n = 20
    trunc = 8 * (n + 1)
    e4, e6 = eis1_qexp(4, trunc), eis1_qexp(6, trunc)
    br = scalar_bracket_q(e4, e6)
    assert br.weight == 12
    d = delta1_qexp(trunc)
    assert br.coefficient(1) == 3456
    for m in range(n + 1):
        assert br.coefficient(m) == 3456 * d.coefficient(m), m


def test_genus1_scalar_is_one_by_one_determinant():
    e4, e6 = eis1_qexp(4, 80), eis1_qexp(6, 80)
    br = scalar_bracket_q(e4, e6)
    manual = e6.scale_coeff(6) * e4.q_diff() - e4.scale_coeff(4) * e6.q_diff()
    assert br.terms == manual.terms


def test_genus2_bracket_is_boundary_vanishing():
    """The scalar bracket is boundary-vanishing even off the cusp ideal, and
    its order is at least g (order F + order G)."""
    f = theta_pow8_sum(32)          # weight 4, boundary order 0
    t2 = tnull_qexp(32)
    g_form = (t2 * t2).with_character(False)  # weight 10, boundary order 1
    br = scalar_bracket_q(f, g_form)
    assert br.weight == 2 * (4 + 10) + 2
    assert not br.is_zero()
    assert br.fj_order() > 0
    assert br.fj_order() >= 2 * (f.fj_order() + g_form.fj_order())


def test_genus2_bracket_cuspidal_even_for_noncusp_inputs():
    """Both operands have boundary order 0; the bracket still vanishes there."""
    from siegelops.theta import ThetaChar, theta_qexp
    f = theta_pow8_sum(32)
    g_form = theta_qexp(2, ThetaChar((0, 0), (0, 0)), 32) ** 8
    assert f.fj_order() == 0 and g_form.fj_order() == 0
    br = scalar_bracket_q(f, g_form)
    assert not br.is_zero()
    assert br.fj_order() > 0


def test_vector_bracket_q_is_symmetric_matrix():
    f = theta_pow8_sum(24)
    t2 = tnull_qexp(24)
    g_form = (t2 * t2).with_character(False)
    m = vector_bracket_q(f, g_form)
    assert m[0][1].terms == m[1][0].terms
    assert m[0][0].weight == 4 + 10 + 1
