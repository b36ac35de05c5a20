"""Operator expressions: tokenizer, recursive-descent parser, printer and
elaboration into the skew algebra.

Grammar (whitespace is insignificant, juxtaposition is an error)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' int)?
    atom   := 'z' | 'T' | 'd' | rational | '(' expr ')'

``z^-1`` is read as the atom ``zinv``.  Negative exponents are accepted only
on ``z`` and on nonzero rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .errors import MixedNonsense, ParseError
from .skew import DiffOp, Presentation


@dataclass(frozen=True)
class Atom:
    name: str  # "z", "zinv", "T", "d" or "num"
    value: Fraction = Fraction(0)


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


Expr = Union[Atom, Add, Sub, Mul, Pow, Neg]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()]))")

_ATOM_START = {"z", "T", "d", "rational", "("}


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    """Tokens as ``(kind, text, byte offset)``, ending with an EOF token."""
    out = []
    pos = 0
    raw = text.encode()
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip() == "":
                break
            off = len(text[:pos].encode()) + (len(rest) - len(rest.lstrip()))
            bad = rest.lstrip()[0]
            raise ParseError(f"unexpected character {bad!r}", off, _ATOM_START | {"+", "-", "*", "^", ")"})
        start = m.start(m.lastgroup)
        off = len(text[:start].encode())
        kind = m.lastgroup
        tok = re.sub(r"\s+", "", m.group(kind))
        if kind == "name" and tok not in ("z", "T", "d"):
            raise ParseError(f"unknown symbol {tok!r}", off, _ATOM_START)
        out.append((kind if kind != "op" else tok, tok, off))
        pos = m.end()
    out.append(("eof", "", len(raw)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, expected):
        kind, tok, off = self.peek()
        what = "end of input" if kind == "eof" else repr(tok)
        raise ParseError(f"unexpected {what}", off, expected)

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        kind, tok, off = self.peek()
        if kind != "num" or "/" in tok:
            self.error({"integer"} if sign < 0 else {"integer", "-"})
        self.take()
        n = sign * int(tok)
        if n < 0:
            if isinstance(base, Atom) and base.name == "z":
                return Atom("zinv") if n == -1 else Pow(base, n)
            if not (isinstance(base, Atom) and base.name == "num" and base.value != 0):
                raise ParseError("negative exponent is only allowed on z or a nonzero rational", off)
        return Pow(base, n)

    def atom(self) -> Expr:
        kind, tok, off = self.peek()
        if kind == "name":
            self.take()
            return Atom(tok)
        if kind == "num":
            self.take()
            try:
                return Atom("num", Fraction(tok))
            except ZeroDivisionError:
                raise ParseError("zero denominator", off) from None
        if kind == "(":
            self.take()
            node = self.expr()
            if self.peek()[0] != ")":
                self.error({")", "+", "-", "*", "^"})
            self.take()
            return node
        self.error(_ATOM_START | {"-"})


def parse_operator(text: str) -> Expr:
    if not text.strip():
        raise ParseError("empty expression", 0, _ATOM_START)
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "eof":
        p.error({"+", "-", "*", "^", "end of input"})
    return node


# printing

_PREC = {Add: 0, Sub: 0, Mul: 1, Neg: 2, Pow: 3, Atom: 4}


def format_expr(e: Expr) -> str:
    """Canonical text; ``parse_operator(format_expr(e)) == e`` for parsed trees."""
    if isinstance(e, Atom):
        if e.name == "num":
            return str(e.value)
        return "z^-1" if e.name == "zinv" else e.name
    if isinstance(e, Pow):
        base = format_expr(e.base)
        if not isinstance(e.base, Atom) or e.base.name == "zinv":
            base = f"({base})"
        return f"{base}^{e.exp}"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, 2)
    if isinstance(e, Mul):
        return f"{_wrap(e.left, 1)}*{_wrap(e.right, 2)}"
    op = " + " if isinstance(e, Add) else " - "
    return f"{_wrap(e.left, 0)}{op}{_wrap(e.right, 1)}"


def _wrap(e: Expr, min_prec: int) -> str:
    s = format_expr(e)
    return s if _PREC[type(e)] >= min_prec else f"({s})"


# elaboration


def _uses_d(e: Expr) -> bool:
    if isinstance(e, Atom):
        return e.name == "d"
    if isinstance(e, (Add, Sub, Mul)):
        return _uses_d(e.left) or _uses_d(e.right)
    if isinstance(e, Pow):
        return _uses_d(e.base)
    return _uses_d(e.operand)


def elaborate(e: Expr) -> DiffOp:
    """Evaluate in the skew algebra and return the T-form normal order.

    Expressions containing ``d`` are evaluated in the D presentation first.
    """
    pres = Presentation.D if _uses_d(e) else Presentation.THETA
    return _eval(e, pres).theta()


def _eval(e: Expr, pres: Presentation) -> DiffOp:
    if isinstance(e, Atom):
        if e.name == "num":
            return DiffOp.const(e.value, pres)
        if e.name == "z":
            return DiffOp.z(1, pres)
        if e.name == "zinv":
            return DiffOp.z(-1, pres)
        if e.name == "T":
            return DiffOp.T() if pres is Presentation.THETA else DiffOp({(1, 1): 1}, Presentation.D)
        if e.name == "d":
            return DiffOp.d()
        raise MixedNonsense(f"unknown atom {e.name!r}")
    if isinstance(e, Add):
        return _eval(e.left, pres) + _eval(e.right, pres)
    if isinstance(e, Sub):
        return _eval(e.left, pres) - _eval(e.right, pres)
    if isinstance(e, Mul):
        return _eval(e.left, pres) * _eval(e.right, pres)
    if isinstance(e, Neg):
        return -_eval(e.operand, pres)
    if isinstance(e, Pow):
        try:
            return _eval(e.base, pres) ** e.exp
        except ValueError as exc:
            raise MixedNonsense(str(exc)) from None
    raise MixedNonsense(f"not an expression node: {e!r}")


def parse(text: str) -> DiffOp:
    """``elaborate(parse_operator(text))``."""
    return elaborate(parse_operator(text))
