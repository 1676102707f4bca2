"""
Root finding for monotone radius equations.

    bracket = bracket_root(f, domain_hi)
    result = refine_root(f, bracket, tol=1e-12)

``bracket_root`` walks a geometric grid from 1e-4 toward the top of the
domain until the sign changes, then narrows the bracket with one linear
pass. ``refine_root`` bisects it. Only the sign of f is trusted.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from scripts.utils.errors import DomainError, NoRootError, NonConvergenceError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MIN_TOL = 1e-15
MAX_ITERATIONS = 200

GRID_START = 1e-4
GRID_RATIO = 1.3
REFINE_SUBINTERVALS = 10


@dataclass(frozen=True)
class Bracket:
    """An interval with f(lo) < 0 < f(hi)."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if not (self.f_lo < 0.0 < self.f_hi):
            raise ValueError(
                f"bracket needs f(lo) < 0 < f(hi), got f_lo={self.f_lo!r}, f_hi={self.f_hi!r}"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class RadiusResult:
    radius: float
    bracket: Bracket
    residual: float
    iterations: int
    converged: bool


def bracket_root(
    f: Callable[[float], float], domain_hi: float, domain_lo: float = 0.0
) -> Bracket:
    """Find a sign change of an increasing f on [domain_lo, domain_hi].

    Raises NoRootError when f(domain_lo) >= 0 or f never becomes positive.
    """
    if not domain_lo < domain_hi:
        raise DomainError(f"empty search domain [{domain_lo!r}, {domain_hi!r}]")

    lo, f_lo = domain_lo, f(domain_lo)
    if not f_lo < 0.0:
        raise NoRootError(f"f({domain_lo!r}) = {f_lo!r} is not negative, no sign change")

    points = []
    x = max(GRID_START, domain_lo * GRID_RATIO)
    while x < domain_hi:
        if x > domain_lo:
            points.append(x)
        x *= GRID_RATIO
    points.append(domain_hi)

    hi = f_hi = None
    for x in points:
        fx = f(x)
        if fx < 0.0:
            lo, f_lo = x, fx
        elif fx > 0.0:
            hi, f_hi = x, fx
            break
    if hi is None:
        raise NoRootError(f"no sign change on [{domain_lo!r}, {domain_hi!r}]")

    for x in np.linspace(lo, hi, REFINE_SUBINTERVALS + 1)[1:-1]:
        x = float(x)
        fx = f(x)
        if fx < 0.0:
            lo, f_lo = x, fx
        elif fx > 0.0:
            hi, f_hi = x, fx
            break

    logger.debug("bracket [%r, %r]", lo, hi)
    return Bracket(lo, hi, f_lo, f_hi)


def refine_root(
    f: Callable[[float], float],
    b: Bracket,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITERATIONS,
) -> RadiusResult:
    """Bisect ``b`` until its width is at most ``tol``.

    An exact zero at a midpoint is accepted immediately. If the bracket
    stops shrinking in floating point, bisection ends early and the result
    counts as converged only when its width is within ``tol``.
    """
    if not math.isfinite(tol) or tol < MIN_TOL:
        raise DomainError(f"tol must be >= {MIN_TOL!r}, got {tol!r}")

    lo, hi, f_lo, f_hi = b.lo, b.hi, b.f_lo, b.f_hi
    iterations = 0
    while hi - lo > tol and iterations < max_iter:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        iterations += 1
        f_mid = f(mid)
        if f_mid == 0.0:
            logger.debug("exact zero at %r after %d iterations", mid, iterations)
            return RadiusResult(mid, Bracket(lo, hi, f_lo, f_hi), 0.0, iterations, True)
        if f_mid < 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    bracket = Bracket(lo, hi, f_lo, f_hi)
    radius = 0.5 * (lo + hi)
    converged = bracket.width <= tol
    result = RadiusResult(radius, bracket, f(radius), iterations, converged)
    logger.debug(
        "bisection stopped: radius=%r width=%.3g iterations=%d", radius, bracket.width, iterations
    )
    if not converged:
        raise NonConvergenceError(
            f"bracket width {bracket.width!r} still above tol={tol!r} after {iterations} iterations",
            result,
        )
    return result


@dataclass(frozen=True)
class MonotoneCheck:
    """Outcome of ``check_monotone``; truthy iff f increased on every evaluated point.

    ``domain_end`` is the last grid point where f could be evaluated (None if
    none could), ``skipped`` the number of grid points outside the domain.
    """

    increasing: bool
    domain_end: float | None
    skipped: int

    def __bool__(self) -> bool:
        return self.increasing


def check_monotone(
    f: Callable[[float], float], domain_hi: float, samples: int, domain_lo: float = 0.0
) -> MonotoneCheck:
    """Check that f is strictly increasing over ``samples`` evenly spaced points.

    Points where f raises DomainError are skipped and the end of the
    evaluated domain is recorded.
    """
    if samples < 2:
        raise DomainError(f"samples must be >= 2, got {samples!r}")
    values = []
    domain_end = None
    skipped = 0
    for x in np.linspace(domain_lo, domain_hi, samples):
        x = float(x)
        try:
            values.append(f(x))
        except DomainError:
            skipped += 1
            continue
        domain_end = x
    if skipped:
        logger.info(
            "check_monotone: skipped %d of %d points, domain ends at r=%r",
            skipped,
            samples,
            domain_end,
        )
    increasing = len(values) >= 2 and bool(np.all(np.diff(values) > 0.0))
    return MonotoneCheck(increasing, domain_end, skipped)


__all__ = [
    "DEFAULT_TOL",
    "MAX_ITERATIONS",
    "MIN_TOL",
    "Bracket",
    "MonotoneCheck",
    "RadiusResult",
    "bracket_root",
    "check_monotone",
    "refine_root",
]
