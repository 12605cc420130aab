"""
Exceptions raised by the library.

Domain failures subclass :class:`ValueError`, so that callers treating invalid
input generically keep working. Failed postconditions of constructions are
:class:`RuntimeError` and carry the offending object.
"""
from typing import Any, Optional

__all__ = [
    "DimensionMismatchError",
    "BudgetExceededError",
    "PreconditionError",
    "PostconditionError",
]


class DimensionMismatchError(ValueError):
    """Vectors, menus or distributions of an instance disagree in dimension."""


class BudgetExceededError(ValueError):
    """An enumeration or state space exceeds its configured cap."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class PostconditionError(RuntimeError):
    """A verified postcondition of a construction failed.

    :param message: Description of the failed check.
    :param counterexample: Object witnessing the failure, if any.
    """

    def __init__(self, message: str, counterexample: Optional[Any] = None):
        super().__init__(message)
        self.counterexample = counterexample
