"""Truncated Laurent series over Q with per-value precision.

A :class:`TruncatedSeries` represents ``sum c_e * t**e + O(t**prec)``.  The
precision is an exclusive bound on the known exponents; ``math.inf`` marks an
exact (finitely supported) series.  Every operation computes the precision of
its result from the precisions of its inputs, and a coefficient at or above
that bound can never be read.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .errors import DivisionByZeroSeries, InsufficientPrecision
from .scalars import LaurentPolynomial, Q, RationalLike

INF = math.inf
Precision = Union[int, float]  # int or math.inf


def _binom(n: int, k: int) -> Fraction:
    """Generalized binomial coefficient, ``n`` any integer, ``k >= 0``."""
    out = Fraction(1)
    for i in range(k):
        out = out * (n - i) / (i + 1)
    return out


class TruncatedSeries:
    __slots__ = ("_v", "_c", "_prec")

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None, prec: Precision = INF):
        if prec != INF:
            prec = int(prec)
        data = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Q(c)
                if c and e < prec:
                    data[int(e)] = c
        self._prec = prec
        if not data:
            self._v = INF
            self._c: Tuple[Fraction, ...] = ()
        else:
            lo, hi = min(data), max(data)
            self._v = lo
            self._c = tuple(data.get(e, Fraction(0)) for e in range(lo, hi + 1))

    @classmethod
    def _dense(cls, start: int, coeffs: Sequence[Fraction], prec: Precision) -> "TruncatedSeries":
        s = cls.__new__(cls)
        coeffs = list(coeffs)
        if prec != INF:
            keep = max(0, min(len(coeffs), prec - start))
            coeffs = coeffs[:keep]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        j = len(coeffs)
        while j > i and not coeffs[j - 1]:
            j -= 1
        s._prec = prec
        if i == j:
            s._v = INF
            s._c = ()
        else:
            s._v = start + i
            s._c = tuple(coeffs[i:j])
        return s

    @classmethod
    def from_list(cls, coeffs: Iterable[RationalLike], start: int = 0, prec: Precision = INF):
        return cls._dense(start, [Q(c) for c in coeffs], prec)

    @classmethod
    def exact(cls, p: LaurentPolynomial | RationalLike) -> "TruncatedSeries":
        if not isinstance(p, LaurentPolynomial):
            p = LaurentPolynomial.constant(p)
        return cls(dict(p.items()))

    @classmethod
    def zero(cls, prec: Precision = INF) -> "TruncatedSeries":
        return cls(None, prec)

    @classmethod
    def one(cls) -> "TruncatedSeries":
        return cls({0: 1})

    # accessors

    @property
    def valuation(self) -> Precision:
        """Valuation, or ``math.inf`` for a series that is zero up to its precision."""
        return self._v

    @property
    def precision(self) -> Precision:
        return self._prec

    def is_exact(self) -> bool:
        return self._prec == INF

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes (zero up to precision)."""
        return self._v == INF

    def coefficient(self, e: int) -> Fraction:
        if e >= self._prec:
            raise InsufficientPrecision(f"coefficient t^{e} is beyond precision {self._prec}")
        if self._v == INF or e < self._v or e >= self._v + len(self._c):
            return Fraction(0)
        return self._c[e - self._v]

    def terms(self):
        """Nonzero known terms as ``(exponent, coefficient)`` pairs."""
        if self._v == INF:
            return []
        return [(self._v + i, c) for i, c in enumerate(self._c) if c]

    def leading_coefficient(self) -> Fraction:
        if self._v == INF:
            raise InsufficientPrecision("leading coefficient of a series that is zero up to precision")
        return self._c[0]

    def _known_valuation(self) -> Precision:
        # lower bound on the true valuation; for O(t^p) this is p
        return self._prec if self._v == INF else self._v

    def _dense_range(self, lo: int, hi: int) -> list:
        return [self.coefficient(e) if e < self._prec else Fraction(0) for e in range(lo, hi)]

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self._prec, other._prec)
        data = {}
        for e, c in self.terms():
            data[e] = c
        for e, c in other.terms():
            data[e] = data.get(e, 0) + c
        return TruncatedSeries(data, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._dense(self._v, [-c for c in self._c], self._prec) if self._v != INF \
            else TruncatedSeries.zero(self._prec)

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
        va, vb = self._known_valuation(), other._known_valuation()
        prec = min(va + other._prec, vb + self._prec)
        if self._v == INF or other._v == INF:
            return TruncatedSeries.zero(prec)
        start = self._v + other._v
        n = len(self._c) + len(other._c) - 1
        if prec != INF:
            n = min(n, prec - start)
        if n <= 0:
            return TruncatedSeries.zero(prec)
        # convolve integer numerators over a common denominator
        a, da = _integral(self._c[:n])
        b, db = _integral(other._c[:n])
        out = [0] * n
        for i, x in enumerate(a):
            if not x:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
        den = da * db
        return TruncatedSeries._dense(start, [Fraction(c, den) for c in out], prec)

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> "TruncatedSeries":
        c = Q(c)
        if not c:
            return TruncatedSeries.zero(INF)
        return TruncatedSeries._dense(self._v, [x * c for x in self._c], self._prec) if self._v != INF \
            else TruncatedSeries.zero(self._prec)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``t**k``."""
        prec = self._prec + k
        if self._v == INF:
            return TruncatedSeries.zero(prec)
        return TruncatedSeries._dense(self._v + k, self._c, prec)

    def truncate(self, prec: Precision) -> "TruncatedSeries":
        """Forget every coefficient at or above ``prec``."""
        prec = min(prec, self._prec)
        if self._v == INF:
            return TruncatedSeries.zero(prec)
        return TruncatedSeries._dense(self._v, self._c, prec)

    def split(self, n: int) -> Tuple["TruncatedSeries", "TruncatedSeries"]:
        """Return ``(low, high)`` with ``low`` the exact polynomial part of
        exponents below ``n`` and ``high = self - low``."""
        if n > self._prec:
            raise InsufficientPrecision(f"cannot certify coefficients below t^{n} at precision {self._prec}")
        low = {e: c for e, c in self.terms() if e < n}
        high = {e: c for e, c in self.terms() if e >= n}
        return TruncatedSeries(low), TruncatedSeries(high, self._prec)

    def invert(self, prec: Precision | None = None) -> "TruncatedSeries":
        """Multiplicative inverse.

        The relative precision of the result equals that of the input.  An
        exact input that is not a monomial has an infinite expansion, so
        ``prec`` must then bound the result.
        """
        if self._v == INF:
            raise DivisionByZeroSeries("inverse of a series that is zero up to precision")
        v = self._v
        if self._prec == INF:
            if len(self._c) == 1:
                return TruncatedSeries({-v: 1 / self._c[0]})
            if prec is None:
                raise InsufficientPrecision("inverse of an exact non-monomial series needs a precision")
            out_prec = prec
        else:
            out_prec = -v + (self._prec - v)
            if prec is not None:
                out_prec = min(out_prec, prec)
        n = out_prec + v  # number of coefficients of the unit part
        if n <= 0:
            return TruncatedSeries.zero(out_prec)
        c = self._c
        c0 = c[0]
        b = [1 / c0]
        for k in range(1, n):
            acc = Fraction(0)
            for i in range(1, min(k, len(c) - 1) + 1):
                acc += c[i] * b[k - i]
            b.append(-acc / c0)
        return TruncatedSeries._dense(-v, b, out_prec)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def derivative(self) -> "TruncatedSeries":
        prec = self._prec - 1
        if self._v == INF:
            return TruncatedSeries.zero(prec)
        data = {e - 1: e * c for e, c in self.terms() if e}
        return TruncatedSeries(data, prec)

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = TruncatedSeries.one()
        for _ in range(n):
            result = result * self
        return result

    # comparison

    def equal_up_to(self, other, prec: Precision | None = None) -> bool:
        """True when both series agree on every exponent below ``prec``
        (default: the smaller of the two precisions)."""
        other = _coerce(other)
        bound = min(self._prec, other._prec)
        if prec is None:
            prec = bound
        elif prec > bound:
            raise InsufficientPrecision(f"cannot compare up to {prec}; known only up to {bound}")
        return (self - other).truncate(prec).is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (self._v, self._c, self._prec) == (other._v, other._c, other._prec)

    def __hash__(self):
        return hash((self._v, self._c, self._prec))

    def __repr__(self):
        return f"TruncatedSeries({self.to_str()})"

    def to_str(self, var: str = "t") -> str:
        parts = []
        for e, c in self.terms():
            if e == 0:
                mono = str(c)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                if c != 1:
                    mono = ("-" + mono) if c == -1 else f"{c}*{mono}"
            parts.append(mono)
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self._prec != INF:
            body += f" + O({var}^{self._prec})"
        return body

    __str__ = to_str


def _integral(cs: Sequence[Fraction]) -> Tuple[list, int]:
    den = math.lcm(*(c.denominator for c in cs)) if cs else 1
    return [c.numerator * (den // c.denominator) for c in cs], den


def _coerce(x):
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return TruncatedSeries.exact(x)
    if isinstance(x, LaurentPolynomial):
        return TruncatedSeries.exact(x)
    return NotImplemented


def substitute_mobius(a: TruncatedSeries, prec: Precision) -> TruncatedSeries:
    """Return ``a(t / (1 + t))`` known up to ``min(prec, a.precision)``.

    The substitution ``t -> t/(1+t)`` has valuation one, so the valuation of
    ``a`` is preserved.
    """
    if a.valuation != INF and prec < a.valuation:
        raise ValueError(f"precision {prec} below the valuation {a.valuation}")
    out_prec = min(prec, a.precision)
    if out_prec == INF:
        if all(e <= 0 for e, _ in a.terms()):
            pass  # t^-j (1+t)^j is a finite sum
        else:
            raise InsufficientPrecision("t/(1+t) has an infinite expansion; give a finite precision")
    data = {}
    for j, c in a.terms():
        # t^j (1+t)^(-j) = sum_m binom(-j, m) t^(j+m)
        m = 0
        while True:
            e = j + m
            if e >= out_prec or (j <= 0 and m > -j):
                break
            b = _binom(-j, m)
            if b:
                data[e] = data.get(e, 0) + c * b
            m += 1
    return TruncatedSeries(data, out_prec)


def geometric(ratio: Fraction, prec: int, start: int = 1) -> TruncatedSeries:
    """``sum_{i >= 0} ratio**(i+1) t**(i+start)`` truncated at ``prec``."""
    return TruncatedSeries({start + i: ratio ** (i + 1) for i in range(max(0, prec - start))}, prec)
