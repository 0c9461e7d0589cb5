from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import series, small_fractions
from ellgenus.qcore import (
    GaussianRational,
    GridError,
    I,
    Jet,
    JetError,
    NonIntegralError,
    NonUnitError,
    QSeries,
    jet_mul,
    jet_substitute_sum,
    parse_series,
    qs_arith,
    qs_div,
    qs_invert,
    qs_is_integral,
    qs_reduce_mod,
    render_series,
)
from oracles import long_division_inverse


# -- ring laws -------------------------------------------------------------

@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + b - b == a


@given(series())
def test_zero_and_one(a):
    assert a + QSeries.zero() == a
    assert a * QSeries.constant(1) == a
    assert a - a == 0


@given(series(unit=True))
def test_inverse(a):
    assert a * qs_invert(a) == 1


@given(series(unit=True, integral=True))
def test_integral_inverse_stays_integral(a):
    inv = qs_invert(a, integral=True)
    assert qs_is_integral(inv)[0]
    assert a * inv == 1


@given(series(max_len=14), st.integers(1, 6))
def test_truncation_commutes_with_product(a, k):
    cut = Fraction(k, 2)
    assert (a * a).truncate(cut) == a.truncate(cut) * a.truncate(cut)
    assert (a * a).truncate(cut).cutoff <= cut


def test_geometric_series():
    inv = qs_invert(QSeries({0: 1, 2: -1}, None, 2), cutoff=5)
    assert inv.identical(QSeries({2 * k: 1 for k in range(5)}, 10, 2))


def test_inverse_against_long_division():
    a = [Fraction(x) for x in (3, -1, 4, 1, -5, 9, 2, -6)]
    got = qs_invert(QSeries(dict(enumerate(a)), 8, 2))
    want = long_division_inverse(a, 8)
    assert got.coefficients() == want


def test_precision_is_min_of_operands():
    a = QSeries({0: 1}, 6, 2)
    b = QSeries({0: 1}, 10, 2)
    assert (a + b).cutoff == 3
    assert (a * b).cutoff == 3
    # a leading q^(1) in one factor raises the product's precision
    assert (QSeries({2: 1}, 10, 2) * a).cutoff == 4


def test_exact_series_have_no_cutoff():
    a = QSeries({0: 1, 1: 2}, None, 2)
    assert a.is_exact and (a * a).is_exact
    with pytest.raises(ValueError):
        qs_invert(a)


def test_non_unit_inverse():
    with pytest.raises(NonUnitError):
        qs_invert(QSeries({1: 1}, 4, 2))
    with pytest.raises(NonUnitError):
        qs_invert(QSeries({0: 2, 1: 1}, 4, 2), integral=True)


def test_division_by_leading_monomial():
    b = QSeries({1: 2, 2: 1}, 8, 2)
    a = b * QSeries({0: 1, 3: 5}, 8, 2)
    assert qs_div(a, b) == QSeries({0: 1, 3: 5}, 8, 2)


def test_qs_arith_dispatch():
    a, b = QSeries({0: 1}, 4, 2), QSeries({1: 2}, 4, 2)
    assert qs_arith(a, b, "add") == a + b
    assert qs_arith(a, b, "mul") == a * b
    with pytest.raises(ValueError):
        qs_arith(a, b, "pow")


def test_regrade():
    a = QSeries({0: 1, 1: 3}, 5, 2)
    b = a.regrade(8)
    assert b.coeff(Fraction(1, 2)) == 3 and b.cutoff == Fraction(5, 2)
    assert b.regrade(2).identical(a)
    with pytest.raises(GridError):
        QSeries({1: 1}, 8, 8).regrade(2)


@given(series(max_len=12, integral=True), st.sampled_from([2, 3, 24]))
def test_reduce_mod_k(a, k):
    r = qs_reduce_mod(a, k)
    assert all(0 <= c < k for _, c in r.items())
    assert qs_is_integral((a - r) * Fraction(1, k))[0]
    assert qs_reduce_mod(r, k).identical(r)


@given(series())
def test_reduce_mod_integers(a):
    r = qs_reduce_mod(a, "integers")
    assert all(0 <= c < 1 for _, c in r.items())
    assert qs_is_integral(a - r)[0]


def test_reduce_mod_rejects_fractions():
    with pytest.raises(NonIntegralError):
        qs_reduce_mod(QSeries({0: Fraction(1, 2)}, 2, 2), 2)


def test_integrality_witness():
    a = QSeries({0: 1, 3: Fraction(1, 3), 5: Fraction(1, 2)}, 8, 2)
    assert qs_is_integral(a) == (False, Fraction(3, 2))


# -- rendering -------------------------------------------------------------

def test_render_golden():
    a = QSeries({0: 1, 1: -24, 3: Fraction(5, 2)}, 6, 2)
    assert render_series(a) == "q^(0): 1\nq^(1/2): -24\nq^(3/2): 5/2\nO(q^(3))"


@given(series(denom=8))
def test_render_parse_round_trip(a):
    b = parse_series(render_series(a), denom=8)
    assert b.identical(a)


# -- Gaussian rationals ----------------------------------------------------

gauss = st.builds(GaussianRational, small_fractions, small_fractions)


@given(gauss, gauss)
def test_gaussian_matches_complex(x, y):
    cx = complex(float(x.real), float(x.imag))
    cy = complex(float(y.real), float(y.imag))
    for got, want in ((x + y, cx + cy), (x * y, cx * cy), (x - y, cx - cy)):
        g = GaussianRational(got) if not isinstance(got, GaussianRational) else got
        assert abs(complex(float(g.real), float(g.imag)) - want) < 1e-9


def test_i_squared():
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2


# -- jets ------------------------------------------------------------------

def test_square_zero_variables():
    x = Jet.variable("z1", ("z1", "z2"), (1, 1))
    y = Jet.variable("z2", ("z1", "z2"), (1, 1))
    assert not jet_mul(x, x).coeffs
    assert jet_mul(x, y).coefficient((1, 1)) == 1


@given(st.lists(small_fractions, min_size=4, max_size=4).filter(lambda c: c[0] != 0))
def test_jet_inverse(cs):
    g = Jet.univariate("t", 3, [QSeries.constant(c, 4, 2) for c in cs])
    one = g * g.inverse()
    assert one.coefficient((0,)) == 1
    assert all(not one.coefficient((k,)) for k in (1, 2, 3))


def test_divide_by_variable():
    t = Jet.variable("t", ("t",), (4,))
    g = t * (Jet.constant(QSeries.constant(2, 4, 2), ("t",), (4,)) + t)
    h = g.divide_by_variable("t")
    assert h.caps == (3,)
    assert h[0] == 2 and h[1] == 1
    with pytest.raises(JetError):
        (g + 1).divide_by_variable("t")


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_substitute_sum_uses_factorials(cs):
    g = Jet.univariate("t", 3, [QSeries.constant(c, 4, 2) for c in cs])
    h = jet_substitute_sum(g, ["z1", "z2", "z3"])
    assert h.coefficient((1, 1, 1)) == 6 * cs[3]
    assert h.coefficient((1, 0, 1)) == 2 * cs[2]
    assert h.coefficient((0, 1, 0)) == cs[1]
