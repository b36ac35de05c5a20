"""Truncated microdifference operators ``sum a_i(u) eta^i`` with the product

    P o Q = sum_{alpha >= 0} 1/alpha! (d/d eta)^alpha P * delta^alpha Q

for ``delta = -(u + s) d/du`` or ``delta = u d/du``, the division theorem, and
the local Mellin dimensions of a formal germ.

A :class:`MicroOp` only knows a window of eta-levels ``top, top-1, ...,
top-depth+1``; levels above ``top`` are exactly zero and levels below the
window are unknown.  Each level carries a :class:`TruncatedSeries` in ``u``
with its own precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import EmptyWindow, InsufficientPrecision, TagMismatch, ZeroOperator
from .germs import GermPoint, PointKind
from .scalars import LaurentPolynomial, Q, RationalLike
from .series import INF, TruncatedSeries, geometric
from .skew import LocalDiffOp

_U = TruncatedSeries({1: 1})
_ZERO = TruncatedSeries.zero()


@dataclass(frozen=True)
class Derivation:
    """``delta_s = -(u + s) d/du`` for rational ``s``; ``delta_inf = u d/du`` when ``s`` is None."""

    s: Optional[Fraction] = None

    @classmethod
    def at(cls, s: RationalLike) -> "Derivation":
        return cls(Q(s))

    @classmethod
    def infinity(cls) -> "Derivation":
        return cls(None)

    def __call__(self, f: TruncatedSeries) -> TruncatedSeries:
        df = f.derivative()
        if self.s is None:
            return _U * df
        return -((_U + self.s) * df)

    def __str__(self):
        return "delta_inf" if self.s is None else f"delta_{self.s}"


def _binom(n: int, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (n - i) / (i + 1)
    return out


class MicroOp:
    __slots__ = ("top", "coeffs", "tag")

    def __init__(self, top: int, coeffs: Sequence[TruncatedSeries | LaurentPolynomial | RationalLike],
                 tag: Derivation):
        if not coeffs:
            raise EmptyWindow("a microdifference operator needs at least one known level")
        cs = []
        for c in coeffs:
            if not isinstance(c, TruncatedSeries):
                c = TruncatedSeries.exact(c)
            cs.append(c)
        self.top = int(top)
        self.coeffs: Tuple[TruncatedSeries, ...] = tuple(cs)
        self.tag = tag

    @classmethod
    def monomial(cls, a, e: int, tag: Derivation, depth: int) -> "MicroOp":
        """``a(u) eta^e`` with ``depth - 1`` exactly-zero levels below."""
        return cls(e, [a] + [_ZERO] * (depth - 1), tag)

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    @property
    def low(self) -> int:
        return self.top - self.depth + 1

    def coefficient(self, m: int) -> TruncatedSeries:
        if m > self.top:
            return _ZERO
        if m < self.low:
            raise InsufficientPrecision(f"eta^{m} lies below the known window [{self.low}, {self.top}]")
        return self.coeffs[self.top - m]

    def degree(self) -> Optional[int]:
        """Highest level whose coefficient is nonzero up to precision."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.top - k
        return None

    def leading(self) -> TruncatedSeries:
        d = self.degree()
        if d is None:
            raise InsufficientPrecision("operator is zero up to truncation")
        return self.coefficient(d)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _check(self, other: "MicroOp") -> None:
        if not isinstance(other, MicroOp):
            raise TypeError("expected a MicroOp")
        if other.tag != self.tag:
            raise TagMismatch(f"{self.tag} vs {other.tag}")

    def __add__(self, other: "MicroOp") -> "MicroOp":
        self._check(other)
        top = max(self.top, other.top)
        low = max(self.low, other.low)
        return MicroOp(top, [self.coefficient(m) + other.coefficient(m) for m in range(top, low - 1, -1)],
                       self.tag)

    def __neg__(self) -> "MicroOp":
        return MicroOp(self.top, [-c for c in self.coeffs], self.tag)

    def __sub__(self, other: "MicroOp") -> "MicroOp":
        return self + (-other)

    def __mul__(self, other: "MicroOp") -> "MicroOp":
        return micro_product(self, other)

    def scale_series(self, f: TruncatedSeries) -> "MicroOp":
        """Left multiplication by a function of u (no eta-derivative terms)."""
        return MicroOp(self.top, [f * c for c in self.coeffs], self.tag)

    def equal_up_to_truncation(self, other: "MicroOp") -> bool:
        diff = self - other
        return diff.is_zero()

    def __repr__(self):
        levels = ", ".join(f"eta^{self.top - k}: {c}" for k, c in enumerate(self.coeffs))
        return f"MicroOp[{self.tag}]({levels})"


def micro_product(P: MicroOp, Q_: MicroOp) -> MicroOp:
    """Truncated ``P o_delta Q``; the result window has depth ``min`` of the inputs.

    The alpha-th term lowers the eta-degree by alpha, so level k of the
    result collects ``C(i, alpha) p_i delta^alpha(q_j)`` over
    ``a + b + alpha = k`` (a, b the level offsets inside each window).
    """
    P._check(Q_)
    depth = min(P.depth, Q_.depth)
    delta = P.tag
    # derivatives of Q's coefficients: dq[b][alpha]
    dq: List[List[TruncatedSeries]] = []
    for b in range(depth):
        chain = [Q_.coeffs[b]]
        for _ in range(depth - 1 - b):
            chain.append(delta(chain[-1]))
        dq.append(chain)
    out = []
    for k in range(depth):
        acc = _ZERO
        for a in range(k + 1):
            p = P.coeffs[a]
            if p.is_exact() and p.is_zero():
                continue
            i = P.top - a
            for alpha in range(k - a + 1):
                b = k - a - alpha
                q = dq[b][alpha]
                if q.is_exact() and q.is_zero():
                    continue
                w = _binom(i, alpha)
                if w:
                    acc = acc + (p * q).scale(w)
        out.append(acc)
    return MicroOp(P.top + Q_.top, out, delta)


def remainder_slots(P: MicroOp) -> int:
    """u-valuation ``v`` of the top coefficient: the remainder of a division
    by ``P`` lives in ``sum_{j < v} u^j Q((1/eta))``."""
    a = P.coeffs[0]
    if a.is_zero():
        raise InsufficientPrecision("leading coefficient is zero up to precision")
    v = a.valuation
    if v < 0:
        raise ValueError(f"leading coefficient has negative u-valuation {v}")
    return int(v)


def micro_divide(S: MicroOp, P: MicroOp, uprec: int | None = None) -> Tuple[MicroOp, MicroOp]:
    """Division ``S = Q o P + R`` with ``R = sum_{j<v} u^j R_j(1/eta)``.

    Levels of S are cleared from the top down: the u-part of order below v
    goes into R, the rest is divided by ``a_d`` and pushed into Q.  The
    window depth is ``min(S.depth, P.depth)``.  ``uprec`` bounds the
    expansion of ``1/a_d`` when ``a_d`` is exact.
    """
    S._check(P)
    if P.coeffs[0].is_zero():
        raise InsufficientPrecision("divisor has no certified leading coefficient at its top level")
    v = remainder_slots(P)
    d = P.top
    K = min(S.depth, P.depth)
    delta = P.tag
    if uprec is None:
        finite = [c.precision for c in S.coeffs + P.coeffs if c.precision != INF]
        uprec = max(finite) if finite else 32
    unit = P.coeffs[0].shift(-v)
    unit_inv = unit.invert(prec=uprec)
    dp: List[List[TruncatedSeries]] = []
    for j in range(K):
        chain = [P.coeffs[j]]
        for _ in range(K - 1 - j):
            chain.append(delta(chain[-1]))
        dp.append(chain)
    residual = list(S.coeffs[:K])
    qs: List[TruncatedSeries] = []
    rs: List[TruncatedSeries] = []
    for k in range(K):
        m = S.top - k
        c = residual[k]
        if c.precision < v:
            raise InsufficientPrecision(f"level eta^{m} known only to u^{c.precision}, need u^{v}")
        r, hi = c.split(v)
        q = hi.shift(-v) * unit_inv
        if q.precision <= 0 and not q.is_exact():
            raise InsufficientPrecision(f"quotient at eta^{m - d} has no certified coefficient")
        qs.append(q)
        rs.append(r)
        for kk in range(k + 1, K):
            t = kk - k
            acc = _ZERO
            for j in range(t + 1):
                alpha = t - j
                w = _binom(m - d, alpha)
                if w:
                    acc = acc + (q * dp[j][alpha]).scale(w)
            residual[kk] = residual[kk] - acc
    return MicroOp(S.top - d, qs, delta), MicroOp(S.top, rs, delta)


def remainder_shape_ok(R: MicroOp, v: int, max_degree: int) -> bool:
    """Every coefficient of R is an exact polynomial of u-degree below v and no
    level above ``max_degree`` is occupied."""
    for k, c in enumerate(R.coeffs):
        level = R.top - k
        if c.is_zero():
            continue
        if not c.is_exact() or level > max_degree:
            return False
        if any(e < 0 or e >= v for e, _ in c.terms()):
            return False
    return True


# local Mellin transforms


@dataclass(frozen=True)
class Window:
    depth: int
    uprec: int


def default_window(L: LocalDiffOp, guard: int = 8) -> Window:
    L = L.normalized()
    d = L.degree
    return Window(d + 2, L.leading.valuation() + d + guard)


def derivation_for(point: GermPoint) -> Derivation:
    if point.kind is PointKind.INFINITY:
        return Derivation.infinity()
    if point.kind is PointKind.ZERO:
        return Derivation.at(0)
    return Derivation.at(point.s)


def micro_localize(L: LocalDiffOp, point: GermPoint, window: Window | None = None) -> MicroOp:
    """Image of ``sum a_i(x) (x d/dx)^i`` in the microdifference ring at ``point``.

    ``x -> u`` and ``x d/dx`` goes to ``-eta`` (ZERO), ``w(u) eta`` with
    ``w = sum_{i>=0} (-u/s)^(i+1)`` (FINITE s), or ``eta`` (INFINITY).
    """
    if not L.is_normalized():
        raise ValueError("micro_localize expects a normalized local operator")
    window = window or default_window(L)
    N = window.depth
    tag = derivation_for(point)
    if point.kind is PointKind.ZERO:
        gen = TruncatedSeries.exact(-1)
    elif point.kind is PointKind.INFINITY:
        gen = TruncatedSeries.exact(1)
    else:
        gen = geometric(-1 / point.s, window.uprec)
    X = MicroOp.monomial(gen, 1, tag, N)
    power = MicroOp.monomial(TruncatedSeries.exact(1), 0, tag, N)
    total: MicroOp | None = None
    for i, a in enumerate(L.coeffs):
        if i:
            power = micro_product(power, X)
        if a.is_zero():
            continue
        term = micro_product(MicroOp.monomial(TruncatedSeries.exact(a), 0, tag, N), power)
        total = term if total is None else total + term
    if total is None:
        raise ZeroOperator("zero local operator")
    top = L.degree
    # align the window so the nominal top is the T-degree
    return MicroOp(top, [total.coefficient(m) for m in range(top, top - N, -1)], tag)


def local_mellin_dim(L: LocalDiffOp, point: GermPoint, window: Window | None = None,
                     retries: int = 1) -> int:
    """Dimension over Q((theta)) of the local Mellin transform of the germ:
    the number of remainder slots of a division by its microlocal image."""
    L = L.normalized()
    window = window or default_window(L)
    for attempt in range(retries + 1):
        try:
            return remainder_slots(micro_localize(L, point, window))
        except InsufficientPrecision:
            if attempt == retries:
                raise
            window = Window(window.depth, window.uprec * 2)
    raise AssertionError("unreachable")
