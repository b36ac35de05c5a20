"""Exception types raised across the kernel."""

from __future__ import annotations


class MellinKitError(Exception):
    """Base class for every error raised by mellinkit."""


class ZeroPolynomial(MellinKitError, ValueError):
    pass


class ZeroOperator(MellinKitError, ValueError):
    pass


class DivisionByZeroSeries(MellinKitError, ZeroDivisionError):
    pass


class NonRationalPoint(MellinKitError, ValueError):
    """A candidate singular point is not rational.

    ``residual`` is the product of the irreducible non-linear factors that
    could not be split over the rationals.
    """

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class WrongKind(MellinKitError, ValueError):
    pass


class TagMismatch(MellinKitError, ValueError):
    pass


class EmptyWindow(MellinKitError, ValueError):
    pass


class InsufficientPrecision(MellinKitError, ArithmeticError):
    pass


class ParseError(MellinKitError, ValueError):
    """Syntax error in an operator expression.

    ``offset`` is the byte offset of the offending token and ``expected``
    the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        detail = f"{message} at offset {offset}"
        if exp:
            detail += f" (expected one of: {exp})"
        super().__init__(detail)


class MixedNonsense(MellinKitError, ValueError):
    pass
