"""
Exceptions raised by the Bohr radius library.

The CLI maps them onto exit codes:
    DomainError          -> 1 (bad argument)
    NoRootError          -> 2 (no sign change, no radius)
    NonConvergenceError  -> 3
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from scripts.utils.solver import RadiusResult


class BohrError(Exception):
    """Base class for all library errors."""


class DomainError(BohrError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoRootError(BohrError):
    """The radius equation has no sign change on its domain."""


class NonConvergenceError(BohrError):
    """Bisection stopped before the bracket reached the requested width.

    The best bracket found is kept on ``result`` (with ``converged=False``).
    """

    def __init__(self, message: str, result: RadiusResult):
        super().__init__(message)
        self.result = result


__all__ = [
    "BohrError",
    "DomainError",
    "NoRootError",
    "NonConvergenceError",
]
