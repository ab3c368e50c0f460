"""Tests for theta characteristics, exact expansions, and the numeric lab."""

import math
from fractions import Fraction

import pytest

from siegelops.theta import (ThetaChar, all_chars, char_from_text, check_condition_star,
                             check_heat, check_modularity, even_chars, form_tnull,
                             form_operator_tnull, gamma_J, gamma_translation, gamma_gl,
                             odd_chars, schottky_qexp, theta_numeric, theta_pow8_sum,
                             theta_qexp, tnull_qexp)


def test_parity_examples():
    assert ThetaChar((0, 0), (1, 1)).is_even()
    assert not ThetaChar((1, 1), (1, 0)).is_even()
    assert char_from_text("01,10").is_even()


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_characteristic_counts(g):
    assert len(even_chars(g)) == 2 ** (g - 1) * (2 ** g + 1)
    assert len(odd_chars(g)) == 2 ** (g - 1) * (2 ** g - 1)
    assert len(all_chars(g)) == 4 ** g


def _lattice_oracle(char, trunc, box=3):
    """Direct genus-2 lattice sum over |n|_inf <= box, written independently."""
    out = {}
    for n1 in range(-box, box + 1):
        for n2 in range(-box, box + 1):
            m1 = Fraction(2 * n1 + char.eps[0], 2)
            m2 = Fraction(2 * n2 + char.eps[1], 2)
            key = (int(8 * m1 * m1 / 2), int(8 * m1 * m2), int(8 * m2 * m2 / 2))
            if key[0] + key[2] > trunc:
                continue
            ed = char.eps[0] * char.delta[0] + char.eps[1] * char.delta[1]
            sign = (-1) ** ((n1 * char.delta[0] + n2 * char.delta[1]) % 2)
            sign *= (-1) ** ((ed // 2) % 2)
            out[key] = out.get(key, 0) + sign
    return {k: Fraction(v) for k, v in out.items() if v}


@pytest.mark.parametrize("char", even_chars(2), ids=str)
def test_theta_qexp_matches_direct_lattice_sum(char):
    assert theta_qexp(2, char, 32).terms == _lattice_oracle(char, 32)


def test_theta00_leading_terms():
    t = theta_qexp(2, ThetaChar((0, 0), (0, 0)), 16)
    assert t.terms[(0, 0, 0)] == 1
    assert t.terms[(4, 0, 0)] == 2
    assert t.terms[(0, 0, 4)] == 2
    assert t.terms[(4, 8, 4)] == 2
    assert t.terms[(4, -8, 4)] == 2


def test_odd_characteristics_vanish():
    for c in odd_chars(2):
        f = theta_qexp(2, c, 24)
        assert f.is_zero() and "identically zero" in f.label
    assert theta_qexp(1, ThetaChar((1,), (1,)), 24).is_zero()


def test_genus1_series():
    t = theta_qexp(1, ThetaChar((0,), (0,)), 40)
    assert dict(t.terms) == {0: Fraction(1), 4: Fraction(2), 16: Fraction(2),
                             36: Fraction(2)}


def test_tnull_properties(t2_48):
    assert t2_48.weight == 5
    assert t2_48.character
    assert t2_48.fj_order() == Fraction(1, 2)
    assert t2_48.fj_slice(Fraction(1, 2))
    assert (t2_48 * t2_48).terms == (t2_48 ** 2).terms


@pytest.mark.parametrize("g", [1, 2])
def test_schottky_vanishes(g):
    assert schottky_qexp(g, 48).is_zero()


def test_schottky_wrong_normalization_nonzero():
    """Dropping the 1/2^(2g) factor must break the vanishing (negative control)."""
    g = 2
    e8 = [theta_qexp(g, c, 24) ** 8 for c in even_chars(g)]
    sum16 = e8[0] * e8[0]
    for f in e8[1:]:
        sum16 = sum16 + f * f
    sum8 = e8[0]
    for f in e8[1:]:
        sum8 = sum8 + f
    wrong = sum16.scale_coeff(Fraction(1, 2 ** g)) - sum8 * sum8
    assert not wrong.is_zero()


def test_theta_numeric_classical_value():
    got = theta_numeric(1, ThetaChar((0,), (0,)), [[1j]])
    expect = math.pi ** 0.25 / math.gamma(0.75)
    assert abs(got - expect) < 1e-12
    # two truncation radii agree
    a = theta_numeric(1, ThetaChar((0,), (0,)), [[1j]], radius=8)
    b = theta_numeric(1, ThetaChar((0,), (0,)), [[1j]], radius=16)
    assert abs(a - b) < 1e-12


def test_odd_theta_numeric_zero():
    tau = [[0.3 + 1.1j, 0.1j], [0.1j, 1.4j]]
    for c in odd_chars(2):
        assert abs(theta_numeric(2, c, tau)) < 1e-12


def test_tau_derivative_against_finite_difference():
    c = ThetaChar((0, 0), (1, 0))
    tau0 = [[1.2j, 0.15 + 0.1j], [0.15 + 0.1j, 1.5j]]
    h = 1e-5
    for (i, j) in ((1, 1), (1, 2), (2, 2)):
        d = theta_numeric(2, c, tau0, d_tau=((i, j),))
        taup = [row[:] for row in tau0]
        taum = [row[:] for row in tau0]
        taup[i - 1][j - 1] += h
        taum[i - 1][j - 1] -= h
        if i != j:
            taup[j - 1][i - 1] += h
            taum[j - 1][i - 1] -= h
        fd = (theta_numeric(2, c, taup) - theta_numeric(2, c, taum)) / (2 * h)
        assert abs(d - fd) / abs(d) < 1e-6


def test_series_agrees_with_lattice_sum():
    """The truncated expansion evaluated numerically matches the lattice sum."""
    tau = [[2.2j, 0.05j], [0.05j, 2.5j]]
    for c in even_chars(2):
        series = theta_qexp(2, c, 48).eval_numeric(tau)
        direct = theta_numeric(2, c, tau)
        assert abs(series - direct) / abs(direct) < 1e-10


def test_heat_equation_residuals():
    rep = check_heat(1, ThetaChar((1,), (0,)), [[2j]], [0.3 + 0.1j])
    assert rep.max_residual < 1e-10
    rep = check_heat(2, ThetaChar((0, 0), (1, 1)), [[2j, 0j], [0j, 3j]], [0, 0])
    assert rep.max_residual < 1e-10


def test_heat_without_two_pi_i_fails():
    """Scale control: omitting 2 pi i leaves an O(1) mismatch."""
    c = ThetaChar((1,), (0,))
    tau, z = [[1.3j]], [0.2 + 0.1j]
    zz = theta_numeric(1, c, tau, z, d_z=(1, 1))
    tt = theta_numeric(1, c, tau, z, d_tau=((1, 1),))
    assert abs(zz - 2 * tt) > 0.1  # correct factor is 2j*pi*(1+1)


def test_product_rule_aggregation(t2_48):
    """Log-derivative gradient of the product vs direct product differentiation."""
    import random
    rng = random.Random(11)
    from siegelops.theta import _tnull_derivatives
    for _ in range(3):
        y3 = rng.uniform(-0.2, 0.2)
        tau = [[complex(rng.uniform(-0.3, 0.3), rng.uniform(1.0, 1.6)), complex(0.1, y3)],
               [complex(0.1, y3), complex(rng.uniform(-0.3, 0.3), rng.uniform(1.0, 1.6))]]
        T, grad, hess = _tnull_derivatives(tau)
        for (i, j) in ((1, 1), (1, 2), (2, 2)):
            sym = 0.5 if i != j else 1.0
            direct = 0j
            for c in even_chars(2):
                part = sym * theta_numeric(2, c, tau, d_tau=((i, j),))
                for cc in even_chars(2):
                    if cc != c:
                        part *= theta_numeric(2, cc, tau)
                direct += part
            assert abs(direct - grad[(i, j)]) < 1e-9 * max(1.0, abs(T))


def test_modularity_with_character():
    import numpy as np
    tau = [[0.2 + 1.7j, 0.1 + 0.08j], [0.1 + 0.08j, -0.1 + 1.9j]]
    t2 = form_tnull(1)
    rep = check_modularity(t2, gamma_translation(np.array([[1, 0], [0, 0]])), tau)
    assert rep.rel_err < 1e-8 and rep.sign in (-1, 1)
    t2sq = form_tnull(2)
    for gam in (gamma_J(2), gamma_gl(np.array([[0, 1], [1, 0]]))):
        rep = check_modularity(t2sq, gam, tau)
        assert rep.rel_err < 1e-8 and rep.sign == 1


def test_operator_form_matches_exact_expansion(t2_48):
    """Numeric operator values agree with the exact expansion (times (2 pi i)^2)."""
    from siegelops.jets import jet_apply
    from siegelops.opgen import build_Q
    from siegelops.qexp import eval_jetpoly
    spec = build_Q(2, Fraction(5))
    jet = jet_apply(spec.Q, {1: "F", 2: "F"}, 2)
    series = eval_jetpoly(jet, {"F": t2_48}).scale_coeff(Fraction(1, 2))
    tau = [[2.4j, 0.1j], [0.1j, 2.6j]]
    series_val = series.eval_numeric(tau) * (2j * math.pi) ** series.tau_factor
    direct = form_operator_tnull(5).eval(tau)
    assert abs(series_val - direct) / abs(direct) < 1e-9


def test_condition_star_points():
    rep = check_condition_star([[1.1j, 0], [0, 1.7j]])
    assert abs(rep.det_value) > 1e-6
    assert rep.vanishing_char == ThetaChar((1, 1), (1, 1))
    rep2 = check_condition_star([[0.25 + 1.05j, 0], [0, -0.35 + 1.45j]])
    assert abs(rep2.det_value) > 1e-6


def test_condition_star_rejects_generic_point():
    with pytest.raises(ValueError):
        check_condition_star([[1.1j, 0.3 + 0.2j], [0.3 + 0.2j, 1.7j]])


def test_theta8_sum_has_order_zero():
    f = theta_pow8_sum(24)
    assert f.weight == 4
    assert f.fj_order() == 0


def test_theta_numeric_rejects_bad_tau():
    with pytest.raises(ValueError):
        theta_numeric(1, ThetaChar((0,), (0,)), [[-1j]])
    with pytest.raises(ValueError):
        theta_numeric(2, ThetaChar((0, 0), (0, 0)), [[1j, 5j], [5j, 1j]])


def test_modularity_inconclusive_near_zero_locus():
    # any diagonal period matrix lies on the zero locus of the product
    rep = check_modularity(form_tnull(1), gamma_J(2), [[1.1j, 0], [0, 1.7j]])
    assert rep.inconclusive
