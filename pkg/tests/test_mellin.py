from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings

from mellinkit.germs import INFINITY, ZERO, germ_at, invariants
from mellinkit.mellin import check_rotation, germ_at_infinity_op, mellin
from mellinkit.parser import parse
from mellinkit.polygons import global_polygon
from mellinkit.skew import DiffnceOp

from strategies import diffops, nonzero_diffops

F = Fraction
eta, Phi = DiffnceOp.eta(), DiffnceOp.phi()


def test_mellin_oracles():
    assert mellin(parse("T - z")) == -eta - Phi
    assert mellin(parse("(z-1)*T + 1")) == -(eta + 1) * Phi + (eta + 1)
    assert mellin(parse("z - 2")) == Phi - 2


def test_germ_at_infinity_oracles():
    assert germ_at_infinity_op(-eta - DiffnceOp.phi(-1)) == -(eta + 1) * Phi - 1
    assert germ_at_infinity_op(-eta - Phi) == -eta - Phi
    assert germ_at_infinity_op(DiffnceOp.phi(2)) == DiffnceOp.const(1)


def test_rotation_oracles():
    r = check_rotation(parse("T - z"))
    assert r.equal and r.lhs.sides == ((F(1), F(1)),)
    r = check_rotation(parse("T - z^-1"))
    assert r.equal and r.lhs.sides == ((F(-1), F(1)),)
    r = check_rotation(parse("(z-1)*T + 1"))
    assert r.equal and r.lhs.sides == ((F(0), F(1)),)


@settings(max_examples=150)
@given(diffops(), diffops())
def test_mellin_is_multiplicative(P, Q):
    if P.is_zero() or Q.is_zero():
        return
    assert mellin(P * Q) == mellin(P) * mellin(Q)
    if not (P + Q).is_zero():
        assert mellin(P + Q) == mellin(P) + mellin(Q)


@settings(max_examples=200)
@given(nonzero_diffops())
def test_rotation_identity(P):
    assert check_rotation(P).equal


@settings(max_examples=200)
@given(nonzero_diffops())
def test_slope_sign_partition(P):
    N = check_rotation(P).lhs
    neg, zero, pos = N.width_by_sign()
    assert neg == invariants(germ_at(P, ZERO)).irr
    assert pos == invariants(germ_at(P, INFINITY)).irr
    assert zero == global_polygon(P).vertical_height
