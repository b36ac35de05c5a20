from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mellinkit.errors import ParseError
from mellinkit.parser import Add, Atom, Mul, Neg, Pow, Sub, elaborate, format_expr, parse, parse_operator
from mellinkit.skew import DiffOp, Presentation

from strategies import diffops

z, T, one = Atom("z"), Atom("T"), Atom("num", Fraction(1))


def test_parse_oracles():
    assert parse_operator("(z-1)*T + 1") == Add(Mul(Sub(z, one), T), one)
    assert parse_operator("T^2 - z^-1") == Sub(Pow(T, 2), Atom("zinv"))
    assert parse_operator(" 3 / 2 ") == Atom("num", Fraction(3, 2))


def test_juxtaposition_is_rejected():
    with pytest.raises(ParseError) as info:
        parse_operator("z z")
    assert info.value.offset == 2
    assert "*" in info.value.expected


@pytest.mark.parametrize("text, offset", [
    ("", 0), ("T^", 2), ("(z", 2), ("z +", 3), ("x", 0), ("T^-1", 3), ("z^1/2", 2), ("1/0", 0), ("z $", 2),
])
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_operator(text)
    assert info.value.offset == offset


def test_elaborate_oracles():
    assert parse("(z-1)*T + 1").terms == {(1, 1): 1, (0, 1): -1, (0, 0): 1}
    assert parse("z*d") == DiffOp.T()
    assert parse("3/2") == DiffOp.const(Fraction(3, 2))
    assert parse("d*z - z*d") == DiffOp.const(1)
    assert parse("z^-2*z^2") == DiffOp.const(1)
    assert parse("-T") == -DiffOp.T()


def _atoms():
    nums = st.builds(Fraction, st.integers(0, 9), st.integers(1, 4)).map(lambda q: Atom("num", q))
    return st.one_of(st.sampled_from([z, T, Atom("d"), Atom("zinv")]), nums)


def _extend(children):
    exps = st.integers(0, 4)
    return st.one_of(
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, exps),
        st.builds(Pow, st.just(z), st.integers(-4, -2)),
    )


exprs = st.recursive(_atoms(), _extend, max_leaves=12)


@settings(max_examples=300)
@given(exprs)
def test_print_parse_fixed_point(e):
    text = format_expr(e)
    assert parse_operator(text) == e
    assert format_expr(parse_operator(text)) == text


@settings(max_examples=200)
@given(diffops())
def test_printed_operators_parse_back(P):
    assert parse(str(P)) == P


@settings(max_examples=100)
@given(exprs.filter(lambda e: "d" not in format_expr(e)))
def test_d_free_expressions_elaborate_in_theta_form(e):
    assert elaborate(e).presentation is Presentation.THETA
