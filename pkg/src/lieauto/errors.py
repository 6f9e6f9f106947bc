"""Exception hierarchy shared across the package."""


class LieAutoError(Exception):
    """Base class for all package errors."""


class ParseError(LieAutoError):
    """Raised on malformed expression or algebra input.

    Carries the offending position when available.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownSymbolError(ParseError):
    """An identifier did not resolve in the active symbol table."""


class AssumptionError(LieAutoError):
    """A binding or declaration violates a symbol's assumption."""


class UndefinedValueError(LieAutoError):
    """An operation produced an undefined value (division by zero, log 0)."""


class ValidationError(LieAutoError):
    """Structure-constant input failed validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SpanError(LieAutoError):
    """A bracket of basis fields left the span of the basis."""


class RankError(LieAutoError):
    """Coefficient matching produced an ambiguous (rank-deficient) system."""


class UnsupportedExponentialError(LieAutoError):
    """The adjoint's characteristic polynomial has unsupported factors."""
