"""Global Mellin transform ``z -> Phi``, ``z d/dz -> -eta`` and the germ at
infinity of the transformed operator."""

from __future__ import annotations

from typing import NamedTuple

from .errors import ZeroOperator
from .polygons import NewtonPolygon, difference_polygon, global_polygon, rotate_cw
from .skew import DiffnceOp, DiffOp

_MINUS_ETA = DiffnceOp({(0, 1): -1})


def mellin(P: DiffOp) -> DiffnceOp:
    """Image of ``P`` under the algebra map, normal-ordered in Q[eta]<Phi, 1/Phi>.

    Each monomial ``z^r T^j`` becomes the product ``Phi^r * (-eta)^j`` taken
    in the difference algebra.
    """
    P = P.theta()
    if P.is_zero():
        raise ZeroOperator("Mellin transform of the zero operator")
    out = DiffnceOp()
    powers = {0: DiffnceOp.const(1)}
    for (r, j), c in sorted(P.terms.items()):
        for k in range(len(powers), j + 1):
            powers[k] = powers[k - 1] * _MINUS_ETA
        out = out + (DiffnceOp.phi(r) * powers[j]).scale(c)
    return out


def germ_at_infinity_op(N: DiffnceOp) -> DiffnceOp:
    """Left-multiply by the unit ``Phi^(-m)`` so the lowest shift is 0.

    The result is the cyclic presentation read at theta = 1/eta.
    """
    if N.is_zero():
        raise ZeroOperator("germ at infinity of the zero operator")
    lo, _ = N.phi_range()
    if lo == 0:
        return N
    return DiffnceOp.phi(-lo) * N


class RotationCheck(NamedTuple):
    lhs: NewtonPolygon
    rhs: NewtonPolygon
    equal: bool


def check_rotation(P: DiffOp) -> RotationCheck:
    """Polygon of the Mellin germ at infinity against the clockwise quarter
    turn of the global polygon of ``P``."""
    lhs = difference_polygon(germ_at_infinity_op(mellin(P)))
    rhs = rotate_cw(global_polygon(P))
    return RotationCheck(lhs, rhs, lhs == rhs)
