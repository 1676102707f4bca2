"""
Series attached to the extremal functions of each class.

For W0H(alpha) the extremal function f_alpha has coefficients

    c_n(alpha) = 2 / (alpha n^2 + (1 - alpha) n),   n >= 2,

and the radius equations need three series built from them:

    majorant   M(r)     = r + sum c_n r^n
    distance   d(alpha) = 1 + sum (-1)^(n-1) c_n
    area ratio S_r / pi = r^2 + sum n c_n^2 r^(2n)

Every sum is returned as a SeriesEval carrying a rigorous bound on the
discarded tail. Positive series use a geometric majorant of the tail,
alternating series the first omitted term.

The stable classes have coefficient bounds 1 (convex) and n (univalent);
their direct series are kept here so the closed bound expressions in
``equations`` can be checked against them.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from scripts.utils.errors import DomainError
from scripts.utils.specfun import LOG2, PI2_6, li2, log1m

logger = logging.getLogger(__name__)

DEFAULT_EPS = 1e-13
R_MAX = 1.0 - 1e-6
CLOSED_FORM_SWITCH = 0.05

_CHUNK = 1 << 20
_MAX_TERMS = 1 << 26


@dataclass(frozen=True)
class SeriesEval:
    """A truncated series value; the exact sum lies in [lower, upper]."""

    value: float
    tail_bound: float
    terms_used: int

    def __post_init__(self):
        if not self.tail_bound >= 0.0:
            raise ValueError(f"tail_bound must be non-negative, got {self.tail_bound!r}")
        if self.terms_used < 0:
            raise ValueError(f"terms_used must be non-negative, got {self.terms_used!r}")

    @property
    def lower(self) -> float:
        return self.value - self.tail_bound

    @property
    def upper(self) -> float:
        return self.value + self.tail_bound


class StableKind(str, Enum):
    """Stable harmonic classes: coefficient bound 1 (convex) or n (univalent)."""

    CONVEX = "convex"
    UNIVALENT = "univalent"


# =============================================================================
# Argument checks
# =============================================================================


def check_alpha(alpha: float) -> float:
    """Validate the class parameter, 0 < alpha <= 1."""
    if not math.isfinite(alpha) or not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must satisfy 0 < alpha <= 1, got {alpha!r}")
    return float(alpha)


def check_radius(r: float, name: str = "r") -> float:
    """Validate a disk radius against the evaluation cap R_MAX."""
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"{name} must be a finite number >= 0, got {r!r}")
    if r >= 1.0:
        raise DomainError(f"{name}={r!r} is on or outside the unit circle")
    if r > R_MAX:
        raise DomainError(f"{name}={r!r} exceeds the evaluation cap {R_MAX!r}")
    return float(r)


def _check_open_unit(r: float, name: str = "r") -> float:
    if not math.isfinite(r) or not 0.0 <= r < 1.0:
        raise DomainError(f"{name} must lie in [0, 1), got {r!r}")
    return float(r)


def _check_eps(eps: float) -> None:
    if not eps > 0.0:
        raise DomainError(f"eps must be positive, got {eps!r}")


# =============================================================================
# Summation machinery
# =============================================================================


def _cutoff(bound: Callable[[int], float], eps: float, n_min: int = 1) -> int:
    """Smallest N >= n_min with bound(N) <= eps.

    ``bound`` is the tail bound after summing through N and must be
    non-increasing in N.
    """
    if bound(n_min) <= eps:
        return n_min
    lo, hi = n_min, max(2 * n_min, 2)
    while bound(hi) > eps:
        if hi >= _MAX_TERMS:
            raise DomainError(f"tail bound stays above eps={eps!r} after {_MAX_TERMS} terms")
        lo, hi = hi, min(2 * hi, _MAX_TERMS)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


def _chunked_sum(term: Callable[[np.ndarray], np.ndarray], first: int, last: int) -> float:
    """Sum term(n) for n = first..last in fixed-size vectorized blocks."""
    total = 0.0
    for start in range(first, last + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, last + 1), dtype=np.float64)
        total += float(np.sum(term(n)))
    return total


def _alternating_sign(n: np.ndarray) -> np.ndarray:
    """(-1)^(n-1) for integer-valued float n."""
    return np.where(np.mod(n, 2.0) == 1.0, 1.0, -1.0)


def _resolve_cutoff(bound: Callable[[int], float], eps: float, n_max: int | None, n_min: int) -> int:
    if n_max is None:
        _check_eps(eps)
        return _cutoff(bound, eps, n_min)
    if n_max < n_min:
        raise DomainError(f"n_max must be >= {n_min}, got {n_max!r}")
    return int(n_max)


# =============================================================================
# W0H(alpha) coefficient family
# =============================================================================


def coeff_w0h(n: int, alpha: float) -> float:
    """Sharp coefficient bound c_n(alpha) = 2 / (alpha n^2 + (1 - alpha) n)."""
    if n < 2:
        raise DomainError(f"coefficient index must be >= 2, got {n!r}")
    alpha = check_alpha(alpha)
    return 2.0 / (n * (alpha * n + (1.0 - alpha)))


def _majorant_tail(r: float, alpha: float, eps: float, n_max: int | None) -> SeriesEval:
    """sum_{n>=2} c_n r^n."""
    if r == 0.0:
        return SeriesEval(0.0, 0.0, 0)
    beta = 1.0 - alpha

    def bound(last: int) -> float:
        # c_n <= 2 / (alpha n^2), then a geometric tail
        m = last + 1
        return 2.0 / (alpha * m * m) * r**m / (1.0 - r)

    last = _resolve_cutoff(bound, eps, n_max, 1)
    value = _chunked_sum(lambda n: 2.0 * np.power(r, n) / (n * (alpha * n + beta)), 2, last)
    logger.debug("majorant tail r=%r alpha=%r: N=%d", r, alpha, last)
    return SeriesEval(value, bound(last), last - 1)


def majorant_w0h(
    r: float, alpha: float, eps: float = DEFAULT_EPS, n_max: int | None = None
) -> SeriesEval:
    """Majorant series r + sum_{n>=2} c_n(alpha) r^n of the extremal function."""
    r = check_radius(r)
    alpha = check_alpha(alpha)
    tail = _majorant_tail(r, alpha, eps, n_max)
    return SeriesEval(r + tail.value, tail.tail_bound, tail.terms_used)


def _area_tail(r: float, alpha: float, eps: float, n_max: int | None) -> SeriesEval:
    """sum_{n>=2} 4 n r^(2n) / (alpha n^2 + (1 - alpha) n)^2."""
    if r == 0.0:
        return SeriesEval(0.0, 0.0, 0)
    beta = 1.0 - alpha
    x = r * r

    def bound(last: int) -> float:
        m = last + 1
        return 4.0 / (alpha * alpha * m**3) * x**m / (1.0 - x)

    def term(n: np.ndarray) -> np.ndarray:
        q = alpha * n + beta
        return 4.0 * np.power(x, n) / (n * q * q)

    last = _resolve_cutoff(bound, eps, n_max, 1)
    value = _chunked_sum(term, 2, last)
    logger.debug("area tail r=%r alpha=%r: N=%d", r, alpha, last)
    return SeriesEval(value, bound(last), last - 1)


def area_ratio_w0h(
    r: float, alpha: float, eps: float = DEFAULT_EPS, n_max: int | None = None
) -> SeriesEval:
    """S_r / pi = r^2 + sum_{n>=2} 4 n r^(2n) / (alpha n^2 + (1 - alpha) n)^2."""
    r = check_radius(r)
    alpha = check_alpha(alpha)
    tail = _area_tail(r, alpha, eps, n_max)
    return SeriesEval(r * r + tail.value, tail.tail_bound, tail.terms_used)


@lru_cache(maxsize=64)
def _distance_cached(alpha: float, eps: float, n_max: int | None) -> SeriesEval:
    beta = 1.0 - alpha

    def omitted(last: int) -> float:
        m = last + 1
        return 2.0 / (m * (alpha * m + beta))

    last = _resolve_cutoff(omitted, eps, n_max, 1)
    value = _chunked_sum(
        lambda n: _alternating_sign(n) * 2.0 / (n * (alpha * n + beta)),
        2,
        last,
    )
    logger.debug("distance alpha=%r: N=%d", alpha, last)
    return SeriesEval(1.0 + value, omitted(last), last - 1)


def distance_w0h(alpha: float, eps: float = DEFAULT_EPS, n_max: int | None = None) -> SeriesEval:
    """Boundary distance 1 + sum_{n>=2} (-1)^(n-1) c_n(alpha) of f_alpha.

    Terms decrease in magnitude from n = 2 on, so the error is at most the
    first omitted term.
    """
    alpha = check_alpha(alpha)
    if n_max is None:
        _check_eps(eps)
    return _distance_cached(alpha, float(eps), n_max)


def growth_lower_w0h(
    r: float, alpha: float, eps: float = DEFAULT_EPS, n_max: int | None = None
) -> SeriesEval:
    """Lower growth bound r + sum (-1)^(n-1) c_n r^n, equal to |f_alpha(-r)|."""
    r = check_radius(r)
    alpha = check_alpha(alpha)
    if r == 0.0:
        return SeriesEval(0.0, 0.0, 0)
    beta = 1.0 - alpha

    def omitted(last: int) -> float:
        m = last + 1
        return 2.0 * r**m / (m * (alpha * m + beta))

    last = _resolve_cutoff(omitted, eps, n_max, 1)
    value = _chunked_sum(
        lambda n: _alternating_sign(n) * 2.0 * np.power(r, n) / (n * (alpha * n + beta)),
        2,
        last,
    )
    return SeriesEval(r + value, omitted(last), last - 1)


# =============================================================================
# Closed forms
# =============================================================================


def majorant_tail_closed_half(r: float) -> float:
    """sum_{n>=2} 4 r^n / (n^2 + n) = 4 - 2r + (4/r)(1 - r) log(1 - r)."""
    r = _check_open_unit(r)
    if r < CLOSED_FORM_SWITCH:
        return _majorant_tail(r, 0.5, DEFAULT_EPS, None).value
    return 4.0 - 2.0 * r + 4.0 / r * (1.0 - r) * log1m(r)


def area_tail_closed_half(r: float) -> float:
    """sum_{n>=2} 16 n r^(2n) / (n^2 + n)^2 in terms of Li2(r^2).

    With x = r^2 the sum equals
        -4x + (16/x)(1 - x) log(1 - x) - (16/x) Li2(x) + 32.
    """
    r = _check_open_unit(r)
    if r < CLOSED_FORM_SWITCH:
        return _area_tail(r, 0.5, DEFAULT_EPS, None).value
    x = r * r
    return -4.0 * x + 16.0 / x * (1.0 - x) * log1m(x) - 16.0 / x * li2(x) + 32.0


def distance_closed_half() -> float:
    """d(1/2) = 1 + 2(-3 + 4 log 2) = 8 log 2 - 5."""
    return 8.0 * LOG2 - 5.0


def majorant_tail_closed_one(r: float) -> float:
    """sum_{n>=2} 2 r^n / n^2 = 2 Li2(r) - 2r."""
    r = _check_open_unit(r)
    return 2.0 * li2(r) - 2.0 * r


def distance_closed_one() -> float:
    """d(1) = 1 + 2 (pi^2/12 - 1) = pi^2/6 - 1."""
    return PI2_6 - 1.0


# =============================================================================
# Stable classes
# =============================================================================


def _geometric_weighted_tail(x: float, last: int, power: int) -> float:
    """Bound on sum_{n>last} n^power x^n for power in {0, 1, 3}."""
    m = last + 1
    if power == 0:
        return x**m / (1.0 - x)
    if power == 1:
        return x**m * (m - (m - 1) * x) / (1.0 - x) ** 2
    # term ratio is at most ((m + 1) / m)^3 x beyond m
    q = (1.0 + 1.0 / m) ** 3 * x
    if q >= 1.0:
        return math.inf
    return m**3 * x**m / (1.0 - q)


def _stable_series(x: float, power: int, eps: float, n_max: int | None) -> SeriesEval:
    if x == 0.0:
        return SeriesEval(0.0, 0.0, 0)

    def bound(last: int) -> float:
        return _geometric_weighted_tail(x, last, power)

    last = _resolve_cutoff(bound, eps, n_max, 1)
    value = _chunked_sum(lambda n: n**power * np.power(x, n), 1, last)
    return SeriesEval(value, bound(last), last)


def majorant_stable(
    r: float, kind: StableKind, eps: float = DEFAULT_EPS, n_max: int | None = None
) -> SeriesEval:
    """Majorant of the stable extremal map: sum r^n (convex) or sum n r^n (univalent)."""
    r = check_radius(r)
    power = 0 if StableKind(kind) is StableKind.CONVEX else 1
    return _stable_series(r, power, eps, n_max)


def area_ratio_stable(
    r: float, kind: StableKind, eps: float = DEFAULT_EPS, n_max: int | None = None
) -> SeriesEval:
    """S_r / pi bound: sum n r^(2n) (convex) or sum n^3 r^(2n) (univalent)."""
    r = check_radius(r)
    power = 1 if StableKind(kind) is StableKind.CONVEX else 3
    return _stable_series(r * r, power, eps, n_max)


__all__ = [
    "CLOSED_FORM_SWITCH",
    "DEFAULT_EPS",
    "R_MAX",
    "SeriesEval",
    "StableKind",
    "area_ratio_stable",
    "area_ratio_w0h",
    "area_tail_closed_half",
    "check_alpha",
    "check_radius",
    "coeff_w0h",
    "distance_closed_half",
    "distance_closed_one",
    "distance_w0h",
    "growth_lower_w0h",
    "majorant_stable",
    "majorant_tail_closed_half",
    "majorant_tail_closed_one",
    "majorant_w0h",
]
