from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mellinkit.germs import INFINITY, ZERO, GermPoint, PointKind, germ_at, invariants, singular_points
from mellinkit.parser import parse
from mellinkit.scalars import LaurentPolynomial as LP
from mellinkit.skew import DiffOp, LocalDiffOp

from strategies import nonzero_diffops


def test_germ_oracles():
    assert germ_at(parse("T - z^-1"), ZERO) == LocalDiffOp([LP({0: -1}), LP({1: 1})])
    assert germ_at(parse("(z-1)*T + 1"), GermPoint.finite(1)) == LocalDiffOp([1, LP({1: 1, 0: 1})])
    assert germ_at(parse("T"), INFINITY) == LocalDiffOp([0, -1])


def test_invariants_oracles():
    r = invariants(LocalDiffOp([LP({0: -1}), LP({1: 1})]))
    assert (r.dim, r.irr, r.mu) == (1, 1, 2)
    assert r.slopes == ((Fraction(1), Fraction(1)),)
    r = invariants(LocalDiffOp([1, LP({1: 1, 0: 1})]))
    assert (r.dim, r.irr, r.mu, r.slopes) == (1, 0, 1, ())
    r = invariants(LocalDiffOp([5]))
    assert (r.dim, r.irr, r.mu) == (0, 0, 0)


def test_singular_point_oracles():
    assert singular_points(parse("(z-1)*T + 1")) == (frozenset({Fraction(1)}), 0)
    assert singular_points(parse("T - z")) == (frozenset(), 0)
    assert singular_points(parse("(z^2+1)*T + z")) == (frozenset(), 2)


def test_point_parsing():
    assert GermPoint.parse("0") is ZERO
    assert GermPoint.parse("inf") is INFINITY
    p = GermPoint.parse("-3/2")
    assert p.kind is PointKind.FINITE and p.s == Fraction(-3, 2) and p.label() == "-3/2"
    with pytest.raises(ValueError):
        GermPoint.parse("x")


@settings(max_examples=100)
@given(nonzero_diffops(), st.integers(-3, 3), st.sampled_from([1, -1, Fraction(3, 2)]),
       st.sampled_from([2, -1, Fraction(1, 3)]))
def test_finite_germ_invariants_ignore_units(P, k, c, s):
    point = GermPoint.finite(s)
    base = invariants(germ_at(P, point))
    moved = invariants(germ_at((DiffOp.z(k) * P).scale(c), point))
    assert (base.dim, base.irr, base.mu) == (moved.dim, moved.irr, moved.mu)


@settings(max_examples=100)
@given(nonzero_diffops())
def test_mu_is_dim_plus_irr(P):
    for point in (ZERO, GermPoint.finite(1), INFINITY):
        r = invariants(germ_at(P, point))
        assert r.mu == r.dim + r.irr
