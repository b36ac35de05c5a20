from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from mellinkit.scalars import LaurentPolynomial as LP
from mellinkit.skew import (
    DiffnceOp,
    DiffOp,
    LocalDiffOp,
    Presentation,
    germ_at_zero,
    invert_coordinate,
    stirling1,
    stirling2,
    translate_op,
)

from strategies import diffnceops, diffops

D, TH = Presentation.D, Presentation.THETA
z, T, d = DiffOp.z(), DiffOp.T(), DiffOp.d()
eta, Phi = DiffnceOp.eta(), DiffnceOp.phi()


def zk(k):
    return LP({k: 1})


def test_product_oracles():
    assert T * z == DiffOp({(1, 1): 1, (1, 0): 1})
    assert z * T == DiffOp({(1, 1): 1})
    assert d * DiffOp.z(2, D) == DiffOp({(2, 1): 1, (1, 0): 2}, D)


def test_difference_product_oracles():
    assert Phi * eta == DiffnceOp({(1, 1): 1, (1, 0): 1})
    assert DiffnceOp.phi(-1) * eta == DiffnceOp({(-1, 1): 1, (-1, 0): -1})
    assert eta * Phi == DiffnceOp({(1, 1): 1})
    assert Phi * DiffnceOp.phi(-1) == DiffnceOp.const(1)


def test_conversion_oracles():
    assert (T * T).convert(D) == DiffOp({(1, 1): 1, (2, 2): 1}, D)
    assert DiffOp({(2, 2): 1}, D).theta() == DiffOp({(0, 2): 1, (0, 1): -1})
    assert z.convert(D) == DiffOp.z(1, D)


def test_stirling_tables():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert [stirling1(4, k) for k in range(5)] == [0, -6, 11, -6, 1]


def test_translate_op_oracles():
    P = (z - 1) * T + 1
    assert translate_op(P, 1) == LocalDiffOp([LP({0: 1}), LP({1: 1, 0: 1})])
    L = translate_op(T, 2)
    assert L.coeffs[1].valuation() == 0
    assert translate_op(DiffOp.const(1), 5) == LocalDiffOp([1])


def test_invert_coordinate_oracles():
    assert invert_coordinate(T - z) == LocalDiffOp([LP({0: -1}), LP({1: -1})])
    assert invert_coordinate(z) == LocalDiffOp([1])
    assert invert_coordinate(T - DiffOp.z(-1)) == LocalDiffOp([LP({1: -1}), LP({0: -1})])


def test_germ_at_zero_normalizes():
    L = germ_at_zero(T - DiffOp.z(-1))
    assert L == LocalDiffOp([LP({0: -1}), LP({1: 1})])
    assert L.is_normalized()


def _act_chain(ops, f):
    for op in reversed(ops):
        f = op.act(f)
    return f


@settings(max_examples=150)
@given(diffops(max_order=3), diffops(max_order=3), st.integers(-3, 3))
def test_monomial_action_oracle(P, Q, k):
    assert (P * Q).act(zk(k)) == P.act(Q.act(zk(k)))
    other = D if P.presentation is TH else TH
    assert P.convert(other).act(zk(k)) == P.act(zk(k))


@settings(max_examples=60)
@given(diffops(max_order=2, max_terms=4), diffops(max_order=2, max_terms=4), diffops(max_order=2, max_terms=4))
def test_associativity(P, Q, R):
    Q, R = Q.convert(P.presentation), R.convert(P.presentation)
    assert (P * Q) * R == P * (Q * R)


@settings(max_examples=60)
@given(diffnceops(), diffnceops(), diffnceops())
def test_difference_associativity(P, Q, R):
    assert (P * Q) * R == P * (Q * R)


@given(diffops())
def test_conversion_round_trip(P):
    other = D if P.presentation is TH else TH
    assert P.convert(other).convert(P.presentation).terms == P.terms


@given(diffops(presentation=TH))
def test_operator_is_determined_by_its_action(P):
    # two operators agreeing on z^k for many k coincide
    Q = P.convert(D).theta()
    assert all(P.act(zk(k)) == Q.act(zk(k)) for k in range(-4, 5))
    assert P == Q
