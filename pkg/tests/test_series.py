"""Univariate series arithmetic: worked examples and algebraic properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rnajoint import (
    BadConstantTerm,
    NonzeroInnerConstant,
    Series,
    ZeroConstantDivisor,
)

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def series_strategy(order=6, min_order=0):
    return st.lists(rationals, min_size=min_order + 1, max_size=order + 1).map(Series)


# ----------------------------------------------------------------------
# add / sub / mul
# ----------------------------------------------------------------------


def test_binomial_square():
    one_plus_z = Series([1, 1, 0, 0])
    sq = one_plus_z * one_plus_z
    assert sq.coeffs == (1, 2, 1, 0)


def test_additive_identity():
    a = Series([3, -1, 7])
    assert a + Series.zero(2) == a


def test_geometric_telescoping():
    n = 9
    geo = Series([1] * (n + 1))
    prod = (Series.one(n) - Series.monomial(1, n)) * geo
    assert prod == Series.one(n)


def test_min_order_rule():
    a = Series([1, 2, 3, 4])
    b = Series([1, 1])
    assert (a + b).order == 1
    assert (a * b).order == 1
    assert (a - b).order == 1


def test_scalar_ops():
    a = Series([1, 2])
    assert (a + 1).coeffs == (2, 2)
    assert (2 * a).coeffs == (2, 4)
    assert (a - Fraction(1, 2)).coeffs == (Fraction(1, 2), 2)


# ----------------------------------------------------------------------
# division
# ----------------------------------------------------------------------


def test_geometric_series():
    n = 8
    inv = Series.one(n) / (Series.one(n) - Series.monomial(1, n))
    assert inv.coeffs == (1,) * (n + 1)


def test_valuation_shifted_division():
    z_plus_z2 = Series([0, 1, 1, 0])
    z = Series.monomial(1, 3)
    q = z_plus_z2.shifted_div(z)
    assert q.coeffs == (1, 1, 0)


def test_zero_constant_divisor():
    a = Series([1, 1, 1])
    b = Series([0, 1, 0])
    with pytest.raises(ZeroConstantDivisor):
        a / b


def test_shifted_div_needs_enough_valuation():
    a = Series([0, 1, 0, 0])
    b = Series([0, 0, 1, 0])
    with pytest.raises(ZeroConstantDivisor):
        a.shifted_div(b)


# ----------------------------------------------------------------------
# sqrt and composition
# ----------------------------------------------------------------------


def test_sqrt_of_one_minus_4z():
    n = 8
    a = Series.one(n) - Series.monomial(1, n, 4)
    s = a.sqrt()
    # independent check: square the result symbolically
    assert s * s == a
    assert s.coeffs[:4] == (1, -2, -2, -4)


def test_sqrt_of_one():
    assert Series.one(5).sqrt() == Series.one(5)


def test_sqrt_requires_unit_constant():
    with pytest.raises(BadConstantTerm):
        Series([4, 1, 1]).sqrt()


def test_catalan_numbers_from_closed_form():
    n = 10
    one = Series.one(n + 1)
    f = (one - (one - Series.monomial(1, n + 1, 4)).sqrt()).shifted_div(
        Series.monomial(1, n + 1, 2)
    )
    assert f.integer_coeffs()[:5] == [1, 1, 2, 5, 14]
    # the quadratic z F^2 - F + 1 = 0 pins the whole sequence
    z = Series.monomial(1, f.order)
    residual = z * f * f - f + Series.one(f.order)
    assert residual.is_zero()


def test_compose_substitution():
    n = 6
    outer = Series([1] * (n + 1))  # 1/(1-w)
    inner = Series.monomial(2, n)
    c = outer.compose(inner)
    assert c.coeffs == (1, 0, 1, 0, 1, 0, 1)


def test_compose_at_origin():
    f = Series([7, 3, 1])
    assert f.compose(Series.zero(2)) == Series.constant(7, 2)


def test_compose_identity():
    f = Series([1, 1, 2, 5, 14])
    assert f.compose(Series.monomial(1, 4)) == f


def test_compose_rejects_nonzero_constant():
    with pytest.raises(NonzeroInnerConstant):
        Series([1, 1]).compose(Series([1, 1]))


# ----------------------------------------------------------------------
# properties
# ----------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_axioms(a, b, c):
    n = min(a.order, b.order, c.order)
    a, b, c = a.truncate(n), b.truncate(n), c.truncate(n)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(series_strategy())
def test_sqrt_squares_back(a):
    shifted = Series([Fraction(1)] + list(a.coeffs[1:]))
    s = shifted.sqrt()
    assert s * s == shifted
    assert s.constant_term == 1


@settings(max_examples=40, deadline=None)
@given(series_strategy(), series_strategy())
def test_div_mul_roundtrip(a, b):
    n = min(a.order, b.order)
    b = Series([Fraction(1)] + list(b.coeffs[1 : n + 1]))
    a = a.truncate(n)
    assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(series_strategy(order=5, min_order=1), rationals)
def test_compose_locality(outer, extra):
    # coefficients through order n must ignore inner coefficients above n
    inner = Series([0, 1, -1, 2, 0, 1])
    n = min(outer.order, inner.order) - 1
    perturbed = Series(list(inner.coeffs[:-1]) + [inner.coeffs[-1] + extra + 1])
    lhs = outer.compose(inner).truncate(n)
    rhs = outer.compose(perturbed).truncate(n)
    assert lhs == rhs


# ----------------------------------------------------------------------
# serialisation
# ----------------------------------------------------------------------


def test_csv_integer_form():
    assert Series([1, 0, 3]).to_csv() == "0,1\n1,0\n2,3\n"


def test_csv_rational_form():
    text = Series([Fraction(1, 2), 1]).to_csv()
    assert text == "0,1,2\n1,1,1\n"


def test_indexing_respects_truncation():
    a = Series([1, 2])
    assert a[1] == 2
    with pytest.raises(IndexError):
        a[2]
