"""Exception hierarchy shared by the library and the CLI."""


class WeinsteinError(Exception):
    """Base class for all library errors."""


class DomainError(WeinsteinError, ValueError):
    """A parameter lies outside the mathematical domain (e.g. alpha <= -1/2)."""


class ValidationError(WeinsteinError, ValueError):
    """Inputs are well-typed but inconsistent (grid mismatch, bad counts, ...)."""


class RangeError(WeinsteinError, ArithmeticError):
    """An evaluation left the documented numerical working range."""

    def __init__(self, message, suggestion=None):
        super().__init__(message)
        self.suggestion = suggestion


class PreconditionError(ValidationError):
    """An operation was called on data that does not meet its precondition."""


class NumericalQualityError(WeinsteinError, ArithmeticError):
    """A numerical diagnostic (e.g. finite-difference step) is unreliable."""
