"""Exception hierarchy.

Everything raised on purpose by the package derives from `ClutterBettiError`;
the CLI maps `ParseError` to exit status 2 and every other subclass to 1.
"""

from __future__ import annotations


class ClutterBettiError(Exception):
    """Base class for domain errors."""


class ParseError(ClutterBettiError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidClutter(ClutterBettiError, ValueError):
    pass


class ZeroIdeal(ClutterBettiError):
    """The circuit ideal is zero: the clutter is the maximal clutter."""

    def __init__(self, message: str = "zero ideal (complement is empty)"):
        super().__init__(message)


class UnsupportedShape(ClutterBettiError):
    pass


class CapacityExceeded(ClutterBettiError):
    pass


class NotPseudoManifold(ClutterBettiError):
    pass


class NonIntegralBetti(ClutterBettiError, ArithmeticError):
    pass


class InconsistentInput(ClutterBettiError, ValueError):
    pass


class InvalidGlue(ClutterBettiError, ValueError):
    pass


class FixtureValidationFailed(ClutterBettiError):
    pass
