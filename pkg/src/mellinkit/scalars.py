"""Exact rationals and univariate Laurent polynomials over Q.

Rationals are plain :class:`fractions.Fraction` values; this module only adds
the coercion helper and the Laurent polynomial type used as coefficient ring
by the operator algebras.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import ZeroPolynomial

RationalLike = Union[int, Fraction, str]


def Q(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a reduced Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


class LaurentPolynomial:
    """A finite sum of ``c * t**e`` with ``e`` any integer.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None):
        c: Dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Q(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, Fraction]) -> "LaurentPolynomial":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: RationalLike) -> "LaurentPolynomial":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: RationalLike = 1) -> "LaurentPolynomial":
        return cls({e: c})

    @classmethod
    def from_list(cls, coeffs: Iterable[RationalLike], start: int = 0) -> "LaurentPolynomial":
        """Build from dense coefficients of ``t**start, t**(start+1), ...``."""
        return cls({start + i: c for i, c in enumerate(coeffs)})

    # structure

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._c.items()))

    def coefficient(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def degree(self) -> int:
        if not self._c:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ZeroPolynomial("valuation of the zero polynomial")
        return min(self._c)

    def leading_coefficient(self) -> Fraction:
        return self._c[self.degree()]

    def trailing_coefficient(self) -> Fraction:
        return self._c[self.valuation()]

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self._c)

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPolynomial._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c: Dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPolynomial._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, v), = self._c.items()
            return LaurentPolynomial({e * n: v ** n})
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: RationalLike) -> "LaurentPolynomial":
        c = Q(c)
        if not c:
            return LaurentPolynomial()
        return LaurentPolynomial._raw({e: v * c for e, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``t**k``."""
        return LaurentPolynomial._raw({e + k: v for e, v in self._c.items()})

    def substitute_shift(self, s: RationalLike) -> "LaurentPolynomial":
        """Return ``p(t + s)``; only defined for genuine polynomials."""
        if not self.is_polynomial():
            raise ValueError("p(t+s) of a Laurent polynomial with negative exponents")
        s = Q(s)
        out: Dict[int, Fraction] = {}
        for e, v in self._c.items():
            # binomial expansion of (t+s)^e
            b = Fraction(1)
            for k in range(e + 1):
                out[k] = out.get(k, 0) + v * b * s ** (e - k)
                b = b * (e - k) / (k + 1)
        return LaurentPolynomial._raw({e: v for e, v in out.items() if v})

    def __call__(self, x: RationalLike) -> Fraction:
        x = Q(x)
        return sum((v * x ** e for e, v in self._c.items()), Fraction(0))

    # comparison / display

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPolynomial({dict(sorted(self._c.items()))!r})"

    def to_str(self, var: str = "t") -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = str(abs(v))
            else:
                mono = var if e == 1 else f"{var}^{e}"
                if abs(v) != 1:
                    mono = f"{abs(v)}*{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __str__(self):
        return self.to_str()


def _coerce(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPolynomial.constant(x)
    return NotImplemented


# rational roots


def _positive_divisors(n: int) -> list[int]:
    n = abs(n)
    factors: Dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m and p < 1_000_000:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        if m < 10**12 or _probably_prime(m):
            factors[m] = factors.get(m, 0) + 1
        else:
            from sympy import factorint

            for q, k in factorint(m).items():
                factors[q] = factors.get(q, 0) + k
    divs = [1]
    for q, k in factors.items():
        divs = [d * q**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def _probably_prime(n: int) -> bool:
    if n < 4:
        return n > 1
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _integer_primitive(p: LaurentPolynomial) -> list[int]:
    """Dense integer coefficient list (constant term first) of the primitive
    polynomial proportional to ``p / t**val(p)``."""
    v = p.valuation()
    den = lcm(*(c.denominator for _, c in p.items()))
    dense = [0] * (p.degree() - v + 1)
    for e, c in p.items():
        dense[e - v] = int(c * den)
    g = 0
    for c in dense:
        g = gcd(g, c)
    dense = [c // g for c in dense]
    if dense[-1] < 0:
        dense = [-c for c in dense]
    return dense


def _deflate(dense: list[int], r: Fraction) -> list[int] | None:
    """Divide the integer polynomial by (q t - p) where r = p/q, or return
    None if r is not a root."""
    p, q = r.numerator, r.denominator
    # evaluate q^n * f(p/q) exactly in integers
    n = len(dense) - 1
    acc = 0
    for i, c in enumerate(dense):
        acc += c * p**i * q ** (n - i)
    if acc:
        return None
    # synthetic division by (t - r) over Q, then rescale to integers
    coeffs = [Fraction(c) for c in reversed(dense)]  # highest first
    out = []
    carry = Fraction(0)
    for c in coeffs[:-1]:
        carry = carry * r + c
        out.append(carry)
    quotient = list(reversed(out))
    den = lcm(*(c.denominator for c in quotient))
    ints = [int(c * den) for c in quotient]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def split_rational(p: LaurentPolynomial) -> Tuple[Dict[Fraction, int], LaurentPolynomial]:
    """Split ``p`` (ignoring its ``t**val`` factor) into rational linear factors.

    Returns ``({root: multiplicity}, residual)`` where ``residual`` is the
    primitive integer polynomial with no rational roots left.
    """
    if p.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    dense = _integer_primitive(p)
    roots: Dict[Fraction, int] = {}
    if len(dense) > 1:
        nums = _positive_divisors(dense[0])
        dens = _positive_divisors(dense[-1])
        candidates = sorted({Fraction(sg * a, b) for a in nums for b in dens for sg in (1, -1)})
        for r in candidates:
            while len(dense) > 1:
                nxt = _deflate(dense, r)
                if nxt is None:
                    break
                roots[r] = roots.get(r, 0) + 1
                dense = nxt
            if len(dense) == 1:
                break
    return roots, LaurentPolynomial.from_list(dense)


def rational_roots(p: LaurentPolynomial) -> Tuple[frozenset, int]:
    """All rational roots of ``p`` (each once, never 0) and the degree of the
    factor left over once every rational linear factor is divided out."""
    roots, residual = split_rational(p)
    return frozenset(roots), residual.degree()

