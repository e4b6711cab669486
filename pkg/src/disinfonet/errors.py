"""Exception hierarchy shared across the package."""


class DisinfoError(Exception):
    """Base class; ``category`` is the tag the CLI prints."""

    category = "error"


class ParameterError(DisinfoError, ValueError):
    category = "parameter"


class DomainError(DisinfoError, ValueError):
    category = "domain"


class NumericError(DisinfoError, ArithmeticError):
    category = "numeric"
