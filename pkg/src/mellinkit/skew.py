"""Normal-ordered arithmetic in the skew algebras.

* :class:`DiffOp` -- the localized Weyl algebra ``Q[z, 1/z]<d/dz>``, stored
  either in THETA presentation (monomials ``z^r T^j`` with ``T = z d/dz``) or
  in D presentation (monomials ``z^r d^i``).  Coefficients always sit to the
  left.
* :class:`DiffnceOp` -- ``Q[eta]<Phi, 1/Phi>`` with ``Phi eta = (eta+1) Phi``,
  monomials ``eta^e Phi^i``.
* :class:`LocalDiffOp` -- ``sum a_i(x) (x d/dx)^i`` over ``Q((x))`` with
  Laurent polynomial coefficients.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import NonRationalPoint, ZeroOperator
from .scalars import LaurentPolynomial, Q, RationalLike


class Presentation(enum.Enum):
    THETA = "T"
    D = "D"


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind: x(x-1)...(x-n+1) = sum s(n,k) x^k."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _falling(x: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= x - i
    return out


def _clean(terms: Mapping) -> Dict:
    return {k: v for k, v in terms.items() if v}


def _accumulate(out: Dict, key, value) -> None:
    out[key] = out.get(key, 0) + value


class DiffOp:
    """Element of ``Q[z, 1/z]<d/dz>`` in normal order (powers of z on the left).

    ``terms`` maps ``(r, j)`` to the coefficient of ``z^r T^j`` (THETA) or
    ``z^r d^j`` (D).
    """

    __slots__ = ("presentation", "terms")

    def __init__(self, terms: Mapping[Tuple[int, int], RationalLike] | None = None,
                 presentation: Presentation = Presentation.THETA):
        clean = {}
        for (r, j), c in (terms or {}).items():
            if j < 0:
                raise ValueError("negative derivation power")
            c = Q(c)
            if c:
                clean[(int(r), int(j))] = c
        self.presentation = presentation
        self.terms: Dict[Tuple[int, int], Fraction] = clean

    # generators

    @classmethod
    def const(cls, c: RationalLike, presentation: Presentation = Presentation.THETA) -> "DiffOp":
        return cls({(0, 0): c}, presentation)

    @classmethod
    def z(cls, k: int = 1, presentation: Presentation = Presentation.THETA) -> "DiffOp":
        return cls({(k, 0): 1}, presentation)

    @classmethod
    def T(cls) -> "DiffOp":
        return cls({(0, 1): 1}, Presentation.THETA)

    @classmethod
    def d(cls) -> "DiffOp":
        return cls({(0, 1): 1}, Presentation.D)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[LaurentPolynomial]) -> "DiffOp":
        """``sum_j coeffs[j](z) T^j``."""
        terms = {}
        for j, a in enumerate(coeffs):
            for r, c in a.items():
                terms[(r, j)] = c
        return cls(terms, Presentation.THETA)

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Highest power of T (or d) present."""
        if not self.terms:
            raise ZeroOperator("order of the zero operator")
        return max(j for _, j in self.terms)

    def coefficient(self, j: int) -> LaurentPolynomial:
        """Left coefficient of ``T^j`` (or ``d^j``) as a Laurent polynomial in z."""
        return LaurentPolynomial({r: c for (r, jj), c in self.terms.items() if jj == j})

    def coefficients(self) -> list:
        return [self.coefficient(j) for j in range(self.order() + 1)]

    def leading_coefficient(self) -> LaurentPolynomial:
        return self.coefficient(self.order())

    def z_exponents(self) -> list:
        return sorted({r for r, _ in self.terms})

    # arithmetic

    def _same(self, other) -> "DiffOp":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return DiffOp.const(other, self.presentation)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return other if other.presentation is self.presentation else other.convert(self.presentation)

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return DiffOp(_clean(out), self.presentation)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return DiffOp({k: -v for k, v in self.terms.items()}, self.presentation)

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RationalLike) -> "DiffOp":
        c = Q(c)
        return DiffOp({k: v * c for k, v in self.terms.items()}, self.presentation)

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return mul_diffop(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                ((r, j), c), = self.terms.items()
                if j == 0:
                    return DiffOp({(r * n, 0): c ** n}, self.presentation)
            raise ValueError("only monomials in z are invertible")
        out = DiffOp.const(1, self.presentation)
        for _ in range(n):
            out = out * self
        return out

    def convert(self, target: Presentation) -> "DiffOp":
        return convert_presentation(self, target)

    def theta(self) -> "DiffOp":
        return self.convert(Presentation.THETA)

    # monomial action

    def act(self, f: LaurentPolynomial) -> LaurentPolynomial:
        """Apply the operator to a Laurent polynomial in z."""
        out: Dict[int, Fraction] = {}
        for k, v in f.items():
            for (r, j), c in self.terms.items():
                if self.presentation is Presentation.THETA:
                    w = c * v * Fraction(k) ** j
                    e = k + r
                else:
                    w = c * v * _falling(k, j)
                    e = k - j + r
                if w:
                    _accumulate(out, e, w)
        return LaurentPolynomial(out)

    # comparison / display

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = DiffOp.const(other, self.presentation)
        if not isinstance(other, DiffOp):
            return NotImplemented
        if other.presentation is not self.presentation:
            other = other.convert(self.presentation)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.theta().terms.items()))

    def __repr__(self):
        return f"DiffOp({self}, {self.presentation.name})"

    def __str__(self):
        sym = "T" if self.presentation is Presentation.THETA else "d"
        return _format_terms(self.terms, lambda r, j: [_mono("z", r), _mono(sym, j)])


def _mono(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _format_terms(terms: Mapping, factors) -> str:
    """Render ``{key: coeff}`` using ``factors(*key)`` -> list of factor strings."""
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms, key=lambda k: (-k[1], -k[0])):
        c = terms[key]
        body = "*".join(f for f in factors(*key) if f)
        if not body:
            text = str(abs(c))
        elif abs(c) == 1:
            text = body
        else:
            text = f"{abs(c)}*{body}"
        parts.append(("-" if c < 0 else "+", text))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


def mul_diffop(P: DiffOp, Q_: DiffOp) -> DiffOp:
    """Normal-ordered product ``P * Q``.

    THETA: ``T z^r = z^r (T + r)``.  D: ``d^i z^b = sum_k C(i,k) b(b-1)..(b-k+1) z^(b-k) d^(i-k)``.
    """
    if Q_.presentation is not P.presentation:
        Q_ = Q_.convert(P.presentation)
    out: Dict[Tuple[int, int], Fraction] = {}
    if P.presentation is Presentation.THETA:
        for (r1, j1), c1 in P.terms.items():
            for (r2, j2), c2 in Q_.terms.items():
                c = c1 * c2
                for k in range(j1 + 1):
                    w = _binom(j1, k) * r2 ** (j1 - k)
                    if w:
                        _accumulate(out, (r1 + r2, k + j2), c * w)
    else:
        for (r1, i1), c1 in P.terms.items():
            for (r2, i2), c2 in Q_.terms.items():
                c = c1 * c2
                for k in range(i1 + 1):
                    w = _binom(i1, k) * _falling(r2, k)
                    if w:
                        _accumulate(out, (r1 + r2 - k, i1 - k + i2), c * w)
    return DiffOp(_clean(out), P.presentation)


def convert_presentation(P: DiffOp, target: Presentation) -> DiffOp:
    """T^j = sum_i S(j,i) z^i d^i and z^n d^n = T(T-1)...(T-n+1)."""
    if P.presentation is target:
        return P
    out: Dict[Tuple[int, int], Fraction] = {}
    if target is Presentation.D:
        for (r, j), c in P.terms.items():
            for i in range(j + 1):
                s = stirling2(j, i)
                if s:
                    _accumulate(out, (r + i, i), c * s)
    else:
        for (r, i), c in P.terms.items():
            for k in range(i + 1):
                s = stirling1(i, k)
                if s:
                    _accumulate(out, (r - i, k), c * s)
    return DiffOp(_clean(out), target)


class DiffnceOp:
    """Element of ``Q[eta]<Phi, 1/Phi>``; ``terms[(i, e)]`` is the coefficient
    of ``eta^e Phi^i`` (all shifts to the right)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], RationalLike] | None = None):
        clean = {}
        for (i, e), c in (terms or {}).items():
            if e < 0:
                raise ValueError("coefficients live in Q[eta]; negative eta powers are not allowed")
            c = Q(c)
            if c:
                clean[(int(i), int(e))] = c
        self.terms: Dict[Tuple[int, int], Fraction] = clean

    @classmethod
    def const(cls, c: RationalLike) -> "DiffnceOp":
        return cls({(0, 0): c})

    @classmethod
    def eta(cls) -> "DiffnceOp":
        return cls({(0, 1): 1})

    @classmethod
    def phi(cls, i: int = 1) -> "DiffnceOp":
        return cls({(i, 0): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def phi_range(self) -> Tuple[int, int]:
        if not self.terms:
            raise ZeroOperator("shift range of the zero operator")
        idx = [i for i, _ in self.terms]
        return min(idx), max(idx)

    def coefficient(self, i: int) -> LaurentPolynomial:
        """Left coefficient ``a_i(eta)`` of ``Phi^i``."""
        return LaurentPolynomial({e: c for (ii, e), c in self.terms.items() if ii == i})

    def coefficient_map(self) -> Dict[int, LaurentPolynomial]:
        return {i: self.coefficient(i) for i in sorted({i for i, _ in self.terms})}

    def __add__(self, other):
        other = _as_diffnce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return DiffnceOp(_clean(out))

    __radd__ = __add__

    def __neg__(self):
        return DiffnceOp({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = _as_diffnce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RationalLike) -> "DiffnceOp":
        c = Q(c)
        return DiffnceOp({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        other = _as_diffnce(other)
        if other is NotImplemented:
            return other
        return mul_diffnce(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                ((i, e), c), = self.terms.items()
                if e == 0:
                    return DiffnceOp({(i * n, 0): c ** n})
            raise ValueError("only monomials in Phi are invertible")
        out = DiffnceOp.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _as_diffnce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"DiffnceOp({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i in sorted({i for i, _ in self.terms}, reverse=True):
            a = self.coefficient(i)
            shift = _mono("Phi", i)
            if not shift:
                parts.append(f"({a.to_str('eta')})")
            elif a == 1:
                parts.append(shift)
            else:
                parts.append(f"({a.to_str('eta')})*{shift}")
        return " + ".join(parts)


def _as_diffnce(x):
    if isinstance(x, DiffnceOp):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return DiffnceOp.const(x)
    return NotImplemented


def mul_diffnce(P: DiffnceOp, Q_: DiffnceOp) -> DiffnceOp:
    """Normal-ordered product using ``Phi^i f(eta) = f(eta + i) Phi^i``."""
    out: Dict[Tuple[int, int], Fraction] = {}
    for (i1, e1), c1 in P.terms.items():
        for (i2, e2), c2 in Q_.terms.items():
            c = c1 * c2
            for k in range(e2 + 1):
                w = _binom(e2, k) * i1 ** (e2 - k)
                if w:
                    _accumulate(out, (i1 + i2, e1 + k), c * w)
    return DiffnceOp(_clean(out))


class LocalDiffOp:
    """``sum_i a_i(x) (x d/dx)^i`` with Laurent polynomial coefficients in a
    local coordinate ``x`` (named by ``var`` for display only)."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[LaurentPolynomial | RationalLike], var: str = "x"):
        cs = [c if isinstance(c, LaurentPolynomial) else LaurentPolynomial.constant(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ZeroOperator("local operator with no nonzero coefficient")
        self.coeffs: Tuple[LaurentPolynomial, ...] = tuple(cs)
        self.var = var

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> LaurentPolynomial:
        return self.coeffs[-1]

    def valuations(self) -> Dict[int, int]:
        return {i: a.valuation() for i, a in enumerate(self.coeffs) if not a.is_zero()}

    def min_valuation(self) -> int:
        return min(self.valuations().values())

    def is_normalized(self) -> bool:
        return self.min_valuation() == 0

    def normalized(self) -> "LocalDiffOp":
        """Left-multiply by the power of x making the smallest coefficient
        valuation zero (a unit, so the module is unchanged)."""
        m = self.min_valuation()
        if m == 0:
            return self
        return LocalDiffOp([a.shift(-m) for a in self.coeffs], self.var)

    def __eq__(self, other):
        if not isinstance(other, LocalDiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"LocalDiffOp({self})"

    def __str__(self):
        parts = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            op = "" if i == 0 else (f"({self.var}d{self.var})" if i == 1 else f"({self.var}d{self.var})^{i}")
            coef = a.to_str(self.var)
            if not op:
                parts.append(f"({coef})")
            elif coef == "1":
                parts.append(op)
            else:
                parts.append(f"({coef})*{op}")
        return " + ".join(parts)


def clear_negative_powers(P: DiffOp) -> DiffOp:
    """Left-multiply a THETA-form operator by z^N so every z exponent is >= 0."""
    P = P.theta()
    if P.is_zero():
        raise ZeroOperator("zero operator")
    lo = min(r for r, _ in P.terms)
    if lo >= 0:
        return P
    return DiffOp({(r - lo, j): c for (r, j), c in P.terms.items()})


def translate_op(P: DiffOp, s: RationalLike) -> LocalDiffOp:
    """Germ of ``P`` at the point ``z = s`` (s nonzero) in the coordinate x = z - s.

    The result is exact: z^N clears poles (a unit at s), the D-form
    coefficients become polynomials in x after z = x + s, and x^d * d^i is
    rewritten as x^(d-i) * (x d/dx)(x d/dx - 1)...(x d/dx - i + 1).
    """
    if not isinstance(s, (int, Fraction)) or isinstance(s, bool):
        raise NonRationalPoint(f"point {s!r} is not rational")
    s = Q(s)
    if s == 0:
        raise ValueError("translate_op needs a nonzero point")
    D = clear_negative_powers(P).convert(Presentation.D)
    d = D.order()
    b = {i: D.coefficient(i).substitute_shift(s) for i in range(d + 1)}
    a = [LaurentPolynomial() for _ in range(d + 1)]
    for i, bi in b.items():
        if bi.is_zero():
            continue
        base = bi.shift(d - i)
        for k in range(i + 1):
            st = stirling1(i, k)
            if st:
                a[k] = a[k] + base.scale(st)
    return LocalDiffOp(a, "x").normalized()


def invert_coordinate(P: DiffOp) -> LocalDiffOp:
    """Germ at infinity: z = 1/y, so z^r T^j -> (-1)^j y^(-r) (y d/dy)^j."""
    P = P.theta()
    if P.is_zero():
        raise ZeroOperator("zero operator")
    n = P.order()
    a: list = [dict() for _ in range(n + 1)]
    for (r, j), c in P.terms.items():
        a[j][-r] = c if j % 2 == 0 else -c
    return LocalDiffOp([LaurentPolynomial(x) for x in a], "y").normalized()


def germ_at_zero(P: DiffOp) -> LocalDiffOp:
    """Reinterpret the THETA-form coefficients in Q((z))."""
    P = P.theta()
    if P.is_zero():
        raise ZeroOperator("zero operator")
    return LocalDiffOp(P.coefficients(), "z").normalized()
