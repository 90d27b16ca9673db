"""Shared exception types."""


class CoprimalityError(ValueError):
    """Raised when an operation requires gcd(n, m) = 1 and the input violates it."""


class OrderMismatchError(ValueError):
    """Raised when mixing elements of cyclotomic fields of different orders."""


class SingularMatrixError(ArithmeticError):
    """Raised when inverting a matrix without full rank."""


class InvariantError(RuntimeError):
    """A structural identity that must hold by construction failed to hold."""


class ToleranceError(RuntimeError):
    """A numeric computation could not certify the requested accuracy."""
