from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ellgenus.modcheck import eval_q, theta_value, validate_transform_rule
from ellgenus.qcore import QSeries
from ellgenus.theta import ThetaKind, theta_deriv0, theta_jet, theta_ratio0, theta_transform_table
from oracles import theta1_zero, theta_jacobi_sum_derivative

CUT = Fraction(10)
kinds = st.sampled_from(list(ThetaKind))


def _on_eighths(series, n):
    g = series.regrade(8)
    return [g.coeff(Fraction(i, 8)) for i in range(n)]


def test_theta1_at_zero_is_sum_over_odd_squares():
    assert _on_eighths(theta_deriv0("theta1", 0, CUT), 80) == theta1_zero(80)


def test_jacobi_derivative_identity():
    # theta'(0)/pi = 2 q^(1/8) prod (1-q^j)^3, expanded here by repeated multiplication
    prod = QSeries.constant(1, None, 8)
    for j in range(1, 11):
        prod = prod * QSeries({0: 1, 8 * j: -1}, 80, 8) ** 3
    assert theta_deriv0("theta", 1, CUT) == prod.shift(Fraction(1, 8)) * 2


@pytest.mark.parametrize("kind", [k.value for k in ThetaKind])
@pytest.mark.parametrize("deriv", range(7))
def test_product_matches_fourier_sum(kind, deriv):
    got = _on_eighths(theta_deriv0(kind, deriv, CUT), 80)
    assert got == theta_jacobi_sum_derivative(kind, deriv, 80)


@given(kinds, st.integers(0, 8))
def test_parity(kind, n):
    jet = theta_jet(kind, 8, 4)
    odd = kind is ThetaKind.THETA
    if (n % 2 == 1) != odd:
        assert not jet[n]


@given(kinds, st.integers(0, 8))
def test_derivatives_are_real(kind, n):
    theta_deriv0(kind, n, 4)  # raises RealityError otherwise


@given(kinds, st.integers(1, 6))
def test_truncation_consistency(kind, extra):
    assert theta_jet(kind, 4, 3 + extra).truncate(3) == theta_jet(kind, 4, 3)


def test_ratio_lives_on_half_grid():
    r = theta_ratio0("theta2", 2, CUT)
    assert r.denom == 2
    # theta2''/theta2 at v=0 starts -(2^2)(-2q^(1/2)) = 8q^(1/2)
    assert r.coeff(0) == 0 and r.coeff(Fraction(1, 2)) == 8


@given(kinds, st.sampled_from(["T", "S"]))
def test_transform_rules_hold_numerically(kind, gen):
    rule = theta_transform_table(kind, gen)
    assert validate_transform_rule(rule, digits=25) < 1e-18


def test_theta2_and_theta3_swap_under_t():
    assert theta_transform_table("theta2", "T").target is ThetaKind.THETA3
    assert theta_transform_table("theta3", "T").target is ThetaKind.THETA2
    assert theta_transform_table("theta2", "I").target is ThetaKind.THETA2
    with pytest.raises(ValueError):
        theta_transform_table("theta", "U")


@pytest.mark.parametrize("kind", [k.value for k in ThetaKind])
def test_series_value_matches_numeric_product(kind):
    tau = 0.1 + 1.3j
    series = theta_deriv0(kind, 0, 30)
    assert abs(eval_q(series, tau, 30) - theta_value(kind, 0, tau, 30)) < 1e-20


def test_bad_arguments():
    with pytest.raises(ValueError):
        theta_jet("theta", -1, 4)
    with pytest.raises(ValueError):
        theta_jet("theta", 2, 0)
    with pytest.raises(ValueError):
        ThetaKind.parse("theta9")
