"""Exception types shared by all modules."""

from __future__ import annotations


class CrossingCritError(Exception):
    """Base class for every error raised by this package."""


class NotFound(CrossingCritError, KeyError):
    """A vertex or edge identifier does not exist in the graph."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class InvalidParams(CrossingCritError, ValueError):
    """Family parameters or constructor arguments are out of range."""


class InvalidAnchor(CrossingCritError, ValueError):
    """A local graph operation was applied at vertices violating its preconditions."""


class InvalidDrawing(CrossingCritError, ValueError):
    """A combinatorial drawing is structurally malformed."""


class BudgetExceeded(CrossingCritError, RuntimeError):
    """An enumeration or search would exceed its configured budget."""
