"""Exception types raised across the package."""

from __future__ import annotations


class InvalidParam(ValueError):
    """A scenario parameter violates its constraint."""

    def __init__(self, field: str, value: object, constraint: str):
        self.field = field
        self.value = value
        self.constraint = constraint
        super().__init__(f"{field}={value!r} violates {constraint}")


class NonPositiveLinear(ValueError):
    """A linear power <= 0 was passed to a dB conversion."""


class DomainError(ValueError):
    """An argument lies outside the domain of a closed-form expression."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""
