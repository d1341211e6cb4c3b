"""Exception types shared across the package."""

from __future__ import annotations


class UsageError(ValueError):
    """Raised when arguments are malformed or incompatible."""


class DomainError(ArithmeticError):
    """Raised when an operation is undefined for its input (division by zero, non-unit inversion)."""


class BoundExceeded(RuntimeError):
    """Raised when a computation would exceed a configured safety bound."""
