"""Exceptions raised by the library."""


class BiquadError(Exception):
    """Base class for everything the library raises on purpose."""


class DomainError(BiquadError, ValueError):
    """Input is outside the mathematical domain of an operation."""


class WrongClassError(DomainError):
    """Operation is not available for this field's basis class."""


class PreconditionError(BiquadError, ValueError):
    """Caller broke a stated precondition."""


class VerificationError(BiquadError, ArithmeticError):
    """An exact identity failed to hold."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SearchExhausted(BiquadError, RuntimeError):
    """An escalating search ran past its cap where a result must exist."""
