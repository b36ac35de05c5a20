"""Exact Newton polygons, formal germs and Mellin transforms of differential
operators on the punctured line, with an executable stationary-phase check."""

from .errors import (
    DivisionByZeroSeries,
    EmptyWindow,
    InsufficientPrecision,
    MellinKitError,
    MixedNonsense,
    NonRationalPoint,
    ParseError,
    TagMismatch,
    WrongKind,
    ZeroOperator,
    ZeroPolynomial,
)
from .germs import INFINITY, ZERO, GermPoint, GermReport, germ_at, germ_report, invariants, singular_points
from .mellin import check_rotation, germ_at_infinity_op, mellin
from .microlocal import (
    Derivation,
    MicroOp,
    Window,
    local_mellin_dim,
    micro_divide,
    micro_localize,
    micro_product,
    remainder_slots,
)
from .parser import elaborate, format_expr, parse, parse_operator
from .polygons import (
    NewtonPolygon,
    PolygonKind,
    difference_polygon,
    global_polygon,
    horz,
    irregularity,
    local_diff_polygon,
    rotate_cw,
)
from .scalars import LaurentPolynomial, rational_roots, split_rational
from .series import TruncatedSeries, substitute_mobius
from .skew import DiffnceOp, DiffOp, LocalDiffOp, Presentation
from .stationary import Profile, StationaryPhaseReport, random_operator, verify

__version__ = "0.1.0"
