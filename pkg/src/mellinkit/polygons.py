"""Newton polygons of the three operator families.

A polygon is stored by the finite part of its boundary: a list of
``(slope, width)`` pairs sorted by slope plus the extent of a vertical side.
That description is invariant under translation, so two polygons in the same
translation class compare equal structurally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import WrongKind, ZeroOperator
from .scalars import LaurentPolynomial, rational_roots
from .skew import DiffnceOp, DiffOp, LocalDiffOp

Point = Tuple[Fraction, Fraction]


class PolygonKind(enum.Enum):
    GLOBAL = "GLOBAL"
    DIFFERENCE = "DIFFERENCE"
    LOCAL = "LOCAL-DIFFERENTIAL"


@dataclass(frozen=True)
class NewtonPolygon:
    sides: Tuple[Tuple[Fraction, Fraction], ...]
    vertical_height: Fraction
    kind: PolygonKind
    anchor: Point = field(default=(Fraction(0), Fraction(0)), compare=False)

    @property
    def width(self) -> Fraction:
        return sum((w for _, w in self.sides), Fraction(0))

    @property
    def height(self) -> Fraction:
        return sum((abs(s) * w for s, w in self.sides), Fraction(0)) + self.vertical_height

    @property
    def slopes(self) -> List[Fraction]:
        return [s for s, _ in self.sides]

    def width_by_sign(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Total width of the negative, zero and positive slope sides."""
        neg = sum((w for s, w in self.sides if s < 0), Fraction(0))
        zero = sum((w for s, w in self.sides if s == 0), Fraction(0))
        pos = sum((w for s, w in self.sides if s > 0), Fraction(0))
        return neg, zero, pos

    def height_by_sign(self) -> Tuple[Fraction, Fraction]:
        neg = sum((-s * w for s, w in self.sides if s < 0), Fraction(0))
        pos = sum((s * w for s, w in self.sides if s > 0), Fraction(0))
        return neg, pos

    def vertices(self) -> List[Point]:
        """Finite boundary vertices in geometric traversal order, starting at
        the anchor (used for rendering)."""
        u, v = self.anchor
        pts = [(u, v)]
        if self.kind is PolygonKind.GLOBAL:
            steps = [(w, s * w) for s, w in self.sides if s > 0]
            if self.vertical_height:
                steps.append((Fraction(0), self.vertical_height))
            steps += [(-w, -s * w) for s, w in self.sides if s < 0]
        else:
            steps = [(w, s * w) for s, w in self.sides]
            if self.vertical_height:
                steps.append((Fraction(0), self.vertical_height))
        for du, dv in steps:
            u, v = u + du, v + dv
            pts.append((u, v))
        return pts

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "sides": [{"slope": str(s), "width": str(w)} for s, w in self.sides],
            "vertical_height": str(self.vertical_height),
            "width": str(self.width),
            "height": str(self.height),
        }

    def __str__(self):
        body = ", ".join(f"slope {s} width {w}" for s, w in self.sides) or "no finite sides"
        if self.vertical_height:
            body += f"; vertical side {self.vertical_height}"
        return f"{self.kind.value} polygon: {body}"


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sides_from_chain(chain: Sequence[Point]) -> Tuple[Dict[Fraction, Fraction], Fraction]:
    sides: Dict[Fraction, Fraction] = {}
    vertical = Fraction(0)
    for (u0, v0), (u1, v1) in zip(chain, chain[1:]):
        du, dv = u1 - u0, v1 - v0
        if du == 0:
            vertical += abs(dv)
        else:
            s = dv / du
            sides[s] = sides.get(s, Fraction(0)) + abs(du)
    return sides, vertical


def _make(chain, kind) -> NewtonPolygon:
    sides, vertical = _sides_from_chain(chain)
    return NewtonPolygon(tuple(sorted(sides.items())), vertical, kind, chain[0])


# global polygon: gift wrapping up the right boundary of the left half-lines


def global_points(P: DiffOp) -> List[Point]:
    """``(deg alpha_r, r)`` for each z-power r of ``P = sum alpha_r(T) z^r``.

    Moving z^r to the right of T^j only shifts T, so the degree of alpha_r is
    the top T-power among the terms ``z^r T^j`` of the normal form.
    """
    P = P.theta()
    if P.is_zero():
        raise ZeroOperator("Newton polygon of the zero operator")
    deg: Dict[int, int] = {}
    for r, j in P.terms:
        deg[r] = max(deg.get(r, -1), j)
    return [(Fraction(d), Fraction(r)) for r, d in sorted(deg.items())]


def global_polygon(P: DiffOp) -> NewtonPolygon:
    """Convex envelope of the half-lines ``{u <= deg alpha_r, v = r}``."""
    pts = global_points(P)
    current = pts[0]  # lowest r
    chain = [current]
    while True:
        above = [p for p in pts if p[1] > current[1]]
        if not above:
            break
        best = above[0]
        for p in above[1:]:
            c = _cross(current, best, p)
            # p turns clockwise from best: it bounds the region more tightly
            if c < 0 or (c == 0 and p[1] > best[1]):
                best = p
        chain.append(best)
        current = best
    return _make(chain, PolygonKind.GLOBAL)


# difference polygon: lower convex hull of the upward half-lines


def difference_points(P: DiffnceOp, theta_view: bool = True) -> List[Point]:
    if P.is_zero():
        raise ZeroOperator("Newton polygon of the zero operator")
    pts = []
    for i, a in P.coefficient_map().items():
        v = -a.degree() if theta_view else a.valuation()
        pts.append((Fraction(i), Fraction(v)))
    return pts


def _lower_hull(pts: Sequence[Point]) -> List[Point]:
    hull: List[Point] = []
    for p in sorted(pts):
        if hull and hull[-1][0] == p[0]:
            continue  # same abscissa, larger ordinate
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def difference_polygon(P: DiffnceOp, theta_view: bool = True) -> NewtonPolygon:
    """Convex envelope of ``{x = i, y >= v(a_i)}`` for ``P = sum a_i(eta) Phi^i``.

    With ``theta_view`` the coefficients are read at infinity (theta = 1/eta),
    so ``v(a_i) = -deg a_i``.
    """
    return _make(_lower_hull(difference_points(P, theta_view)), PolygonKind.DIFFERENCE)


def local_diff_polygon(L: LocalDiffOp) -> NewtonPolygon:
    """Convex envelope of the quadrants ``{u <= i, v >= val a_i}``."""
    vals = L.valuations()
    vmin = min(vals.values())
    start = max(i for i, v in vals.items() if v == vmin)
    pts = [(Fraction(i), Fraction(v)) for i, v in vals.items() if i >= start]
    return _make(_lower_hull(pts), PolygonKind.LOCAL)


def irregularity(L: LocalDiffOp) -> int:
    return int(local_diff_polygon(L).height)


def rotate_cw(N: NewtonPolygon) -> NewtonPolygon:
    """Quarter turn clockwise, ``(u, v) -> (v, -u)``, of a global polygon."""
    if N.kind is not PolygonKind.GLOBAL:
        raise WrongKind(f"rotation applies to GLOBAL polygons, got {N.kind.value}")
    sides: Dict[Fraction, Fraction] = {}
    vertical = Fraction(0)
    for s, w in N.sides:
        if s == 0:
            vertical += w
        else:
            ns = -1 / s
            sides[ns] = sides.get(ns, Fraction(0)) + abs(s) * w
    if N.vertical_height:
        sides[Fraction(0)] = sides.get(Fraction(0), Fraction(0)) + N.vertical_height
    u, v = N.anchor
    return NewtonPolygon(tuple(sorted(sides.items())), vertical, PolygonKind.DIFFERENCE, (v, -u))


def horizontal_side_polynomial(P: DiffnceOp) -> Optional[LaurentPolynomial]:
    """``sum_i lc(a_i) t^i`` over the points on the horizontal side, or None.

    ``lc`` is the leading coefficient in theta = 1/eta, i.e. the top eta
    coefficient.
    """
    N = difference_polygon(P)
    if Fraction(0) not in dict(N.sides):
        return None
    coeffs = P.coefficient_map()
    vmin = min(-a.degree() for a in coeffs.values())
    return LaurentPolynomial({i: a.leading_coefficient() for i, a in coeffs.items() if -a.degree() == vmin})


def horz(P: DiffnceOp) -> Tuple[frozenset, int]:
    """Horizontal zeros (rational, without multiplicity) and the degree of the
    part of the horizontal-side polynomial with no rational roots."""
    p = horizontal_side_polynomial(P)
    if p is None:
        return frozenset(), 0
    return rational_roots(p)
