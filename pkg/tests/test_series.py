import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipb.bernoulli import incomplete_poly_bernoulli
from ipb.errors import NonzeroConstantTermError, ValuationError
from ipb.series import (
    TruncatedEGF,
    em_series,
    exp_series,
    gf_incomplete_bernoulli,
    gf_iterated_integral,
    polylog_series,
    series_antiderivative,
    series_compose,
    series_derivative,
    series_div,
    series_log1p,
)
from ipb.variant import Variant

F = Fraction
T = TruncatedEGF

ORDER = 12
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def series(order=ORDER, **kw):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(TruncatedEGF)


def unit_series(order=ORDER):
    return series(order).filter(lambda s: s[0] != 0)


def test_em_series_examples():
    assert em_series(2, -1, 4) == T([1, -1, F(1, 2), 0, 0])
    assert em_series(math.inf, -1, 3) == T([1, -1, F(1, 2), F(-1, 6)])
    assert em_series(-1, -1, 3) == T([0, 0, 0, 0])
    assert em_series(0, 1, 2) == T([1, 0, 0])


def test_em_series_rejects_bad_m():
    with pytest.raises(ValueError):
        em_series(-2, 1, 3)
    with pytest.raises(ValueError):
        em_series(1.5, 1, 3)


def test_compose_examples():
    u = T([0, 0, 1, 0, 0])
    g = T([0, 1, 1, 0, 0])
    assert series_compose(u, g) == T([0, 0, 1, 2, 1])
    f = T([3, F(1, 2), -2, 7, F(5, 3)])
    assert series_compose(f, T([0, 1, 0, 0, 0])) == f
    assert series_compose(T([1, 1, 0, 0, 0]), T([0, 0, F(1, 2), 0, 0])) == T([1, 0, F(1, 2), 0, 0])


def test_compose_rejects_constant_term():
    with pytest.raises(NonzeroConstantTermError):
        series_compose(T([1, 1]), T([1, 1]))


def test_compose_order_is_minimum():
    assert series_compose(T([1] * 6), T([0, 1, 0])).order == 2


def test_div_examples():
    f = T([0, 1, F(1, 2), F(1, 6)])
    assert series_div(f, T([0, 1, 0, 0])) == T([1, F(1, 2), F(1, 6)])
    assert series_div(T([1] + [0] * 5), T([1, -1, 0, 0, 0, 0])) == T([1] * 6)
    log1mt = series_log1p(T([0, -1] + [0] * 6))
    q = series_div(log1mt, T([0, -1] + [0] * 6))
    assert q == T([F(1, j + 1) for j in range(7)])
    # EGF numbers n!/(n+1) are the restricted(1) Bernoulli numbers with mu = 1
    assert q.egf_coefficients() == [F(math.factorial(n), n + 1) for n in range(7)]
    assert q.egf_coefficients() == [incomplete_poly_bernoulli(n, 1, Variant.restricted(1)) for n in range(7)]


def test_div_valuation_error():
    with pytest.raises(ValuationError):
        series_div(T([0, 1, 0]), T([0, 0, 1]))
    with pytest.raises(ValuationError):
        series_div(T([1, 0]), T([0, 0]))


def test_log1p_examples():
    N = 8
    t = T.monomial(1, N)
    assert series_log1p(t) == T([0] + [F((-1) ** (j - 1), j) for j in range(1, N + 1)])
    assert series_log1p(T.zero(N)) == T.zero(N)
    assert series_log1p(exp_series(4, -1) - 1) == T([0, -1, 0, 0, 0])
    with pytest.raises(NonzeroConstantTermError):
        series_log1p(T([1, 1]))


@pytest.mark.parametrize("order", [1, 3, 6, 15])
def test_log_of_exp(order):
    assert series_log1p(exp_series(order) - 1) == T.monomial(1, order)


def test_antiderivative_examples():
    assert series_antiderivative(T([1])) == T([0, 1])
    for n in range(6):
        assert series_antiderivative(T.monomial(n, n)) == T.monomial(n + 1, n + 1, F(1, n + 1))
    geometric = series_div(T([1] + [0] * 6), T([1, -1] + [0] * 5))
    assert series_antiderivative(geometric) == T([0] + [F(1, j) for j in range(1, 8)])


def test_polylog_series_examples():
    assert polylog_series(1, 3) == T([0, 1, F(1, 2), F(1, 3)])
    assert polylog_series(2, 3) == T([0, 1, F(1, 4), F(1, 9)])
    for mu in range(1, 6):
        assert polylog_series(mu, 4)[1] == 1


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(series(), unit_series())
def test_div_mul_round_trip(f, g):
    assert (f * g) / g == f
    assert (f / g) * g == f


@settings(max_examples=40, deadline=None)
@given(series())
def test_antiderivative_then_derivative(f):
    assert series_derivative(series_antiderivative(f)) == f


def test_gf_examples():
    assert gf_incomplete_bernoulli(1, Variant.restricted(1), 2) == [1, F(1, 2), F(2, 3)]
    assert gf_incomplete_bernoulli(1, Variant.associated(2), 2) == [1, 0, F(-1, 2)]
    assert gf_incomplete_bernoulli(1, Variant.classical(), 1) == [1, F(1, 2)]


def _corollary_gf(variant, order):
    # mu = 1 closed forms: log E_m(-t) / (E_m(-t) - 1) and
    # log(1 + e^-t - E_{m-1}(-t)) / (e^-t - E_{m-1}(-t))
    work = order + variant.m
    if variant.kind == "restricted":
        em = em_series(variant.m, -1, work)
        num, den = series_log1p(em - 1), em - 1
    else:
        d = exp_series(work, -1) - em_series(variant.m - 1, -1, work)
        num, den = series_log1p(d), d
    return series_div(num, den).truncate(order).egf_coefficients()


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_mu_one_corollary(m):
    for v in (Variant.restricted(m), Variant.associated(m)):
        expected = _corollary_gf(v, 12)
        assert gf_iterated_integral(1, v, 12) == expected
        assert gf_incomplete_bernoulli(1, v, 12) == expected


def test_iterated_integral_examples():
    assert gf_iterated_integral(2, Variant.classical(), 10) == gf_incomplete_bernoulli(2, Variant.classical(), 10)
    v = Variant.associated(2)
    assert gf_iterated_integral(3, v, 10) == gf_incomplete_bernoulli(3, v, 10)


@pytest.mark.parametrize("mu", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_two_pipelines_agree(mu, m):
    for v in (Variant.restricted(m), Variant.associated(m)):
        assert gf_incomplete_bernoulli(mu, v, 15) == gf_iterated_integral(mu, v, 15)


@pytest.mark.parametrize("mu", [1, 2, 3])
def test_specializations(mu):
    N = 12
    classical = gf_incomplete_bernoulli(mu, Variant.classical(), N)
    assert gf_incomplete_bernoulli(mu, Variant.restricted(N), N) == classical
    assert gf_incomplete_bernoulli(mu, Variant.associated(1), N) == classical


def test_series_is_immutable_value():
    s = T([1, 2, 3])
    with pytest.raises(AttributeError):
        s.foo = 1
    assert hash(s) == hash(T([1, 2, 3]))
