"""Exception types shared across the package."""


class UnicritError(Exception):
    """Base class for mathematical/domain errors (CLI exit status 2)."""


class FieldMismatchError(UnicritError, ValueError):
    """Operands live in different finite fields."""


class LimitExceededError(UnicritError):
    """An enumeration would exceed the configured desk-scale limit."""


class PrecisionError(UnicritError, ArithmeticError):
    """A truncated series result cannot be distinguished from zero."""


class ParseError(ValueError):
    """Malformed textual or JSON input (CLI exit status 1)."""
