"""Formal germs of a global operator and their local invariants."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import NonRationalPoint, ZeroOperator
from .polygons import local_diff_polygon
from .scalars import LaurentPolynomial, Q, RationalLike, split_rational
from .skew import DiffOp, LocalDiffOp, germ_at_zero, invert_coordinate, translate_op


class PointKind(enum.Enum):
    ZERO = "ZERO"
    FINITE = "FINITE"
    INFINITY = "INFINITY"


@dataclass(frozen=True)
class GermPoint:
    kind: PointKind
    s: Optional[Fraction] = None

    @classmethod
    def finite(cls, s: RationalLike) -> "GermPoint":
        s = Q(s)
        if s == 0:
            return ZERO
        return cls(PointKind.FINITE, s)

    @classmethod
    def parse(cls, text: str) -> "GermPoint":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo"):
            return INFINITY
        try:
            return cls.finite(Fraction(t))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a point: {text!r} (use 0, inf or a rational)") from None

    def label(self) -> str:
        if self.kind is PointKind.ZERO:
            return "0"
        if self.kind is PointKind.INFINITY:
            return "inf"
        return str(self.s)

    def sort_key(self):
        order = {PointKind.ZERO: 0, PointKind.FINITE: 1, PointKind.INFINITY: 2}
        return (order[self.kind], self.s or 0)

    def __str__(self):
        return self.label()


ZERO = GermPoint(PointKind.ZERO)
INFINITY = GermPoint(PointKind.INFINITY)


@dataclass(frozen=True)
class GermReport:
    point: GermPoint
    dim: int
    irr: int
    mu: int
    slopes: Tuple[Tuple[Fraction, Fraction], ...]

    def to_dict(self) -> dict:
        return {
            "point": self.point.label(),
            "dim": self.dim,
            "irr": self.irr,
            "mu": self.mu,
            "slopes": [{"slope": str(s), "width": str(w)} for s, w in self.slopes],
        }


def germ_at(P: DiffOp, point: GermPoint) -> LocalDiffOp:
    """Normalized local operator of ``P`` at ``point``."""
    if P.is_zero():
        raise ZeroOperator("germ of the zero operator")
    if point.kind is PointKind.ZERO:
        return germ_at_zero(P)
    if point.kind is PointKind.INFINITY:
        return invert_coordinate(P)
    if not isinstance(point.s, Fraction):
        raise NonRationalPoint(f"point {point.s!r} is not rational")
    return translate_op(P, point.s)


def invariants(L: LocalDiffOp, point: GermPoint | None = None) -> GermReport:
    """dim = T-degree, irr = height of the local polygon, mu = dim + irr."""
    L = L.normalized()
    N = local_diff_polygon(L)
    irr = int(N.height)
    dim = L.degree
    return GermReport(point or ZERO, dim, irr, dim + irr, tuple((s, w) for s, w in N.sides if s > 0))


def germ_report(P: DiffOp, point: GermPoint) -> GermReport:
    return invariants(germ_at(P, point), point)


def singular_split(P: DiffOp) -> Tuple[dict, LaurentPolynomial]:
    """Split the leading T-coefficient into ``{root: multiplicity}`` over Q and
    the residual factor with no rational roots (0 is never a root)."""
    if P.is_zero():
        raise ZeroOperator("singular points of the zero operator")
    return split_rational(P.theta().leading_coefficient())


def singular_points(P: DiffOp) -> Tuple[frozenset, int]:
    """Nonzero rational roots of the leading T-coefficient and the degree of
    the non-rational remainder.  Apparent singularities are included."""
    roots, residual = singular_split(P)
    return frozenset(roots), residual.degree()


def germ_reports(P: DiffOp, points: List[GermPoint]) -> List[GermReport]:
    return [germ_report(P, p) for p in points]
