"""
Special functions used by the closed-form radius equations.

Only the real dilogarithm on [0, 1] and log(1 - x) on [0, 1) are needed:

    Li2(x) = sum_{n>=1} x^n / n^2
    log1m(x) = log(1 - x)

Li2 is summed directly for x <= 1/2 and obtained from the Euler reflection

    Li2(x) = pi^2/6 - log(x) log(1 - x) - Li2(1 - x)

above it, so no evaluation needs more than about 50 terms.
"""

import logging
import math

from scripts.utils.errors import DomainError

logger = logging.getLogger(__name__)

PI2_6 = math.pi**2 / 6
LOG2 = math.log(2.0)

# Relative size of the next term at which the Li2 series is cut.
_TERM_FLOOR = 1e-17
_REFLECTION_SPLIT = 0.5


def _check_unit_interval(name: str, x: float, *, closed: bool) -> None:
    if not math.isfinite(x):
        raise DomainError(f"{name}: argument must be finite, got {x!r}")
    if x < 0.0 or x > 1.0 or (not closed and x == 1.0):
        interval = "[0, 1]" if closed else "[0, 1)"
        raise DomainError(f"{name}: argument {x!r} outside {interval}")


def li2_series(x: float) -> tuple[float, float, int]:
    """Direct summation of Li2 on [0, 1/2].

    Returns (partial sum, tail bound, terms used). The tail bound is the
    geometric majorant x^(N+1) / ((N+1)^2 (1 - x)).
    """
    _check_unit_interval("li2_series", x, closed=False)
    if x == 0.0:
        return 0.0, 0.0, 0

    total = 0.0
    power = x
    n = 1
    while True:
        total += power / (n * n)
        n += 1
        power *= x
        if power / (n * n) <= _TERM_FLOOR * (1.0 + abs(total)):
            break

    tail = power / (n * n * (1.0 - x))
    return total, tail, n - 1


def li2(x: float) -> float:
    """Real dilogarithm Li2(x) for 0 <= x <= 1.

    Li2(1) is the limit pi^2/6.
    """
    _check_unit_interval("li2", x, closed=True)
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6

    if x <= _REFLECTION_SPLIT:
        value, tail, terms = li2_series(x)
        logger.debug("li2(%r): %d terms, tail <= %.3g", x, terms, tail)
        return value

    # x - 1 and 1 - x are exact for x in (1/2, 1)
    complement = 1.0 - x
    value, tail, terms = li2_series(complement)
    logger.debug("li2(%r) via reflection: %d terms, tail <= %.3g", x, terms, tail)
    return PI2_6 - math.log1p(x - 1.0) * math.log1p(-x) - value


def log1m(x: float) -> float:
    """log(1 - x) for 0 <= x < 1, accurate for small x."""
    _check_unit_interval("log1m", x, closed=False)
    return math.log1p(-x)


__all__ = [
    "LOG2",
    "PI2_6",
    "li2",
    "li2_series",
    "log1m",
]
