from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ellgenus import charclass as cc
from ellgenus.qcore import QSeries

half_dims = st.integers(1, 3)


def test_partition_counts():
    assert [len(cc.partitions(n)) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert all(sum(lam) == 5 for lam in cc.partitions(5))


def test_newton_power_sums():
    P = cc.SymmetricSeries.p
    assert cc.power_sum(1, 3) == P(3, 1)
    assert cc.power_sum(2, 3) == P(3, 1, 1) - P(3, 2) * 2
    assert cc.power_sum(3, 3) == P(3, 1, 1, 1) - P(3, 1, 2) * 3 + P(3, 3) * 3


@given(half_dims, st.integers(1, 3))
def test_power_sum_matches_explicit_roots(l, k):
    n = 2 * l
    explicit = cc.RootPolynomial(n, {tuple(2 * k if i == j else 0 for i in range(n)): 1
                                     for j in range(n)}, 2 * l)
    assert cc.from_pontryagin(cc.power_sum(k, l), n) == explicit


def test_total_pontryagin_class():
    # prod (1 + x_i^2) = 1 + p1 + p2 + p3
    s = cc.multiplicative_sequence([1, 1], cc.RootSystem(3))
    P = cc.SymmetricSeries.p
    assert s == cc.SymmetricSeries.one(3) + P(3, 1) + P(3, 2) + P(3, 3)


def test_ahat_low_degrees():
    # (x/2)/sinh(x/2) = 1 - x^2/24 + 7x^4/5760 - ...
    a = cc.ahat(cc.RootSystem(2))
    assert a.coefficient((1,)) == Fraction(-1, 24)
    assert a.coefficient((1, 1)) == Fraction(7, 5760)
    assert a.coefficient((2,)) == Fraction(-4, 5760)


def test_ahat_of_k3_is_two():
    k3 = cc.ManifoldData(4, {(1,): -48})
    assert cc.evaluate_top(cc.ahat(k3.root_system), k3) == 2


@given(half_dims)
def test_witten_bundle_has_rank_one(l):
    assert cc.witten_ch(cc.RootSystem(l), 3).rank() == 1


def test_witten_bundle_first_coefficient():
    # the q^(1/2) term is -ch(T_C - 4l) = -(p1 + (p1^2 - 2 p2)/12 + ...)
    w = cc.witten_ch(cc.RootSystem(2), 2)
    half = Fraction(1, 2)
    assert w.coefficient((1,)).coeff(half) == -1
    assert w.coefficient((1, 1)).coeff(half) == Fraction(-1, 12)
    assert w.coefficient((2,)).coeff(half) == Fraction(2, 12)


@given(half_dims)
def test_trivial_twist(l):
    rs = cc.RootSystem(l)
    assert cc.witten_twisted_ch(rs, cc.TRIVIAL_LINE, 3) == cc.witten_ch(rs, 3)


def test_twisted_bundle_carries_line_terms():
    s = cc.witten_twisted_ch(cc.RootSystem(1), cc.LineClass(), 2)
    assert s.has_line_terms


@st.composite
def pontryagin_series(draw, l):
    keys = [lam for d in range(l + 1) for lam in cc.partitions(d)]
    vals = draw(st.lists(st.integers(-6, 6), min_size=len(keys), max_size=len(keys)))
    return cc.SymmetricSeries(l, dict(((0, lam), v) for lam, v in zip(keys, vals)))


@given(half_dims.flatmap(pontryagin_series))
def test_root_basis_round_trip(s):
    assert cc.to_pontryagin(cc.from_pontryagin(s), s.half_dim) == s


def test_conversion_errors():
    with pytest.raises(cc.ConversionError):
        cc.to_pontryagin(cc.RootPolynomial(2, {(1, 1): 1}))
    with pytest.raises(cc.ConversionError):
        cc.to_pontryagin(cc.RootPolynomial(2, {(2, 0): 1}))
    with pytest.raises(cc.ConversionError):
        cc.from_pontryagin(cc.SymmetricSeries.u_power(1, 2))


def test_exp_requires_nilpotent_argument():
    with pytest.raises(ValueError):
        cc.SymmetricSeries.one(1).exp()


def test_evaluate_top_pairs_only_top_degree():
    M = cc.ManifoldData(8, {(1, 1): 3, (2,): 5})
    P = cc.SymmetricSeries.p
    s = P(2, 1) * 100 + P(2, 1, 1) * 2 + P(2, 2) * QSeries({0: 1, 1: 1}, 4, 2)
    assert cc.evaluate_top(s, M) == QSeries({0: 11, 1: 5}, 4, 2)


def test_missing_line_data():
    M = cc.ManifoldData(4, {(1,): 1})
    with pytest.raises(cc.MissingLineData):
        M.number((2, ()))


# -- manifold files ----------------------------------------------------------

def test_parse_examples():
    assert cc.parse_manifold_text("dim: 4\np1: -48\n") == cc.ManifoldData(4, {(1,): -48})
    assert cc.parse_manifold_text("dim: 4\n") == cc.ManifoldData(4, {})
    m = cc.parse_manifold_text("# a comment\ndim: 8\np1,1: 1/3\np2: -2\nu^2.p1: 4\nu^4: 7\n")
    assert m.pontryagin_numbers == {(1, 1): Fraction(1, 3), (2,): -2}
    assert m.line_numbers == {(2, (1,)): 4, (4, ()): 7}


@pytest.mark.parametrize("text", [
    "dim: 4\np2: 1\n",        # partition exceeds the dimension
    "dim: 4\nq1: 3\n",        # unknown key
    "dim: 4\np1: 1/x\n",      # malformed rational
    "p1: 3\n",                # no dimension
    "dim: 6\n",               # not a multiple of four
    "dim: 4\nu^1: 2\n",       # not top degree
    "dim: 4\np1 3\n",         # missing colon
])
def test_parse_errors(text):
    with pytest.raises(cc.ManifoldFormatError):
        cc.parse_manifold_text(text)


@st.composite
def manifolds(draw):
    m = draw(st.integers(1, 3))
    nums = {lam: draw(st.fractions(-50, 50, max_denominator=5)) for lam in cc.partitions(m)}
    line = None
    if draw(st.booleans()):
        line = {k: draw(st.integers(-9, 9)) for k in cc.all_top_keys(m, True) if k[0]}
    return cc.ManifoldData(4 * m, nums, line)


@given(manifolds())
def test_manifold_round_trip(M):
    assert cc.parse_manifold_text(cc.format_manifold(M)) == M
