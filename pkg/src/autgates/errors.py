"""Exception types shared across the package."""

from __future__ import annotations


class CapacityError(RuntimeError):
    """An exact computation exceeded its configured budget.

    ``partial`` optionally carries the best certified partial result, e.g. a
    subgroup found before a search budget ran out.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class InfeasibleError(ValueError):
    """A requested realization is not expressible with the available gates."""


class UnsupportedStructureError(ValueError):
    """The hypothesis required by an algorithm does not hold for this input."""
