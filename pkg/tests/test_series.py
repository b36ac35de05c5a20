from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given

from mellinkit.errors import DivisionByZeroSeries, InsufficientPrecision
from mellinkit.series import TruncatedSeries as S
from mellinkit.series import geometric, substitute_mobius

from strategies import series

theta = S({1: 1})


def test_mobius_oracles():
    assert substitute_mobius(theta, 4) == S({1: 1, 2: -1, 3: 1}, 4)
    assert substitute_mobius(S.exact(1), 3) == S({0: 1}, 3)
    assert substitute_mobius(S({2: 1}), 5) == S({2: 1, 3: -2, 4: 3}, 5)


def test_mobius_needs_finite_precision_for_positive_powers():
    with pytest.raises(InsufficientPrecision):
        substitute_mobius(theta, math.inf)
    assert substitute_mobius(S({-1: 1}), math.inf) == S({-1: 1, 0: 1})


def test_mul_add_invert_oracles():
    a = S({0: 1, 1: 1}, 4)
    b = S({0: 1, 1: -1, 2: 1, 3: -1}, 4)
    assert a * b == S({0: 1}, 4)
    inv = S({1: 1, 2: 1}, 4).invert()
    assert inv == S({-1: 1, 0: -1, 1: 1}, 2)
    assert inv.valuation == -1
    assert S({2: 1}) + S({2: 1}) == S({2: 2})


def test_precision_is_enforced():
    a = S({0: 1, 1: 2}, 3)
    assert a.coefficient(2) == 0
    with pytest.raises(InsufficientPrecision):
        a.coefficient(3)
    with pytest.raises(DivisionByZeroSeries):
        S.zero(5).invert()
    with pytest.raises(InsufficientPrecision):
        S({0: 1, 1: 1}).invert()


def test_zero_series_comparison():
    z5, z7 = S.zero(5), S.zero(7)
    assert z5.valuation == math.inf
    assert z5 != z7
    assert z5.equal_up_to(z7)


def test_precision_propagation():
    a = S({0: 1}, 5)
    b = S({2: 1}, 4)
    assert (a * b).precision == 4
    assert (a + b).precision == 4
    assert (theta * S.zero(3)).precision == 4
    assert S({1: 3}, 5).derivative() == S({0: 3}, 4)


def test_split():
    low, high = S({0: 1, 1: 2, 3: 5}, 6).split(2)
    assert low == S({0: 1, 1: 2}) and low.is_exact()
    assert high == S({3: 5}, 6)


def test_geometric_matches_mobius_to_16():
    expected = -geometric(Fraction(-1), 16)
    assert substitute_mobius(theta, 16).equal_up_to(expected, 16)


@given(series(nonzero=True), series(nonzero=True))
def test_valuation_is_additive(a, b):
    assert (a * b).valuation == a.valuation + b.valuation


@given(series(nonzero=True))
def test_invert_then_multiply_is_one(a):
    inv = a.invert(prec=12)
    prod = a * inv
    assert prod.equal_up_to(S.one())


@given(series(nonzero=True))
def test_mobius_preserves_valuation(a):
    prec = a.precision if a.precision != math.inf else a.valuation + 8
    assert substitute_mobius(a, prec).valuation == a.valuation


@given(series(), series())
def test_addition_commutes(a, b):
    assert a + b == b + a
