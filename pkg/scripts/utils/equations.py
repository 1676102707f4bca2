"""
Radius equations.

Each equation is a scalar function of r, negative at r = 0 and strictly
increasing on its domain, whose unique zero is a Bohr radius:

    J1(r)  = M(r) + P(S_r/pi) - d(alpha)                          W0H(alpha)
    J2(r)  = M(r)^m + (M(r) - r) + P(S_r/pi) - d(alpha)           W0H(alpha)
    convex     r/(1-r)   + P(area)        - 1/2
    univalent  r/(1-r)^2 + P(area)        - 1/4
    ratio      same majorant, P applied to area / (1 - area)

with M the majorant series, S_r/pi the area series and d the boundary
distance of the extremal function. For alpha = 1/2 the J1/J2 equations
also have closed forms in log and Li2; the printed constant of the first
one is available as ``eval_F_literal`` next to the series-faithful
``eval_F_corrected``.

Problems are described by ``BohrProblem`` (class, polynomial, variant) and
turned into a callable with ``radius_equation``.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from scripts.utils.errors import DomainError
from scripts.utils.series import (
    DEFAULT_EPS,
    R_MAX,
    StableKind,
    area_ratio_w0h,
    check_alpha,
    check_radius,
    distance_w0h,
    majorant_w0h,
)
from scripts.utils.solver import DEFAULT_TOL, Bracket, RadiusResult, bracket_root, refine_root
from scripts.utils.specfun import LOG2, li2, log1m

logger = logging.getLogger(__name__)

F_LITERAL_CONSTANT = 29.0 + 8.0 * LOG2
F_CORRECTED_CONSTANT = 41.0 - 8.0 * LOG2
T_LITERAL_CONSTANT = 45.0 - 8.0 * LOG2

CONVEX_RATIO_LIMIT = (math.sqrt(5.0) - 1.0) / 2.0

# Lower end used when bracketing the closed forms, which divide by r.
CLOSED_FORM_DOMAIN_LO = 1e-6

# Ratio equations are searched slightly inside the degenerate point.
_RATIO_DOMAIN_SHRINK = 1e-9

STABLE_RHS = {StableKind.CONVEX: 0.5, StableKind.UNIVALENT: 0.25}


# =============================================================================
# Polynomial P
# =============================================================================


@dataclass(frozen=True)
class BohrPolynomial:
    """P(w) = l1 w + l2 w^2 + ... + lk w^k with lj >= 0 and lk > 0.

    The empty coefficient tuple is P = 0.
    """

    coefficients: tuple[float, ...] = ()

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        for j, c in enumerate(coeffs, start=1):
            if not math.isfinite(c):
                raise DomainError(f"polynomial coefficient l{j} must be finite, got {c!r}")
            if c < 0.0:
                raise DomainError(f"polynomial coefficient l{j} must be >= 0, got {c!r}")
        if coeffs and coeffs[-1] == 0.0:
            raise DomainError(
                f"leading polynomial coefficient l{len(coeffs)} must be > 0 "
                "(drop trailing zeros)"
            )
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def parse(cls, text: str) -> "BohrPolynomial":
        """Parse a comma list "l1,l2,...,lk"; the empty string is P = 0."""
        text = text.strip()
        if not text:
            return cls(())
        coeffs = []
        for j, part in enumerate(text.split(","), start=1):
            try:
                coeffs.append(float(part))
            except ValueError:
                raise DomainError(f"polynomial coefficient l{j}={part.strip()!r} is not a number")
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def __call__(self, w: float) -> float:
        return poly_eval(self, w)

    def __str__(self) -> str:
        return ",".join(format(c, ".12g") for c in self.coefficients)


def poly_eval(P: BohrPolynomial, w: float) -> float:
    """Evaluate P at w >= 0 by Horner's rule."""
    if math.isnan(w) or w < 0.0:
        raise DomainError(f"polynomial argument must be >= 0, got {w!r}")
    acc = 0.0
    for c in reversed(P.coefficients):
        acc = acc * w + c
    return acc * w


# =============================================================================
# Problem description
# =============================================================================


class ClassKind(str, Enum):
    W0H = "w0h"
    STABLE_CONVEX = "stable-convex"
    STABLE_UNIVALENT = "stable-univalent"


@dataclass(frozen=True)
class ClassSpec:
    """A harmonic mapping class; ``alpha`` is set for W0H only."""

    kind: ClassKind
    alpha: float | None = None

    def __post_init__(self):
        kind = ClassKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is ClassKind.W0H:
            if self.alpha is None:
                raise DomainError("alpha is required for the w0h class")
            object.__setattr__(self, "alpha", check_alpha(self.alpha))
        elif self.alpha is not None:
            raise DomainError(f"alpha only applies to the w0h class, not {kind.value}")

    @classmethod
    def w0h(cls, alpha: float) -> "ClassSpec":
        return cls(ClassKind.W0H, alpha)

    @classmethod
    def stable_convex(cls) -> "ClassSpec":
        return cls(ClassKind.STABLE_CONVEX)

    @classmethod
    def stable_univalent(cls) -> "ClassSpec":
        return cls(ClassKind.STABLE_UNIVALENT)

    @property
    def is_stable(self) -> bool:
        return self.kind is not ClassKind.W0H

    @property
    def stable_kind(self) -> StableKind:
        if self.kind is ClassKind.STABLE_CONVEX:
            return StableKind.CONVEX
        if self.kind is ClassKind.STABLE_UNIVALENT:
            return StableKind.UNIVALENT
        raise DomainError("w0h is not a stable class")

    def __str__(self) -> str:
        return self.kind.value


class VariantKind(str, Enum):
    MAJORANT = "majorant"
    POWER = "power"
    RATIO = "ratio"


@dataclass(frozen=True)
class ProblemVariant:
    """Which left-hand side is compared with the distance.

    MAJORANT   majorant + P(area)
    POWER      majorant^m + majorant tail + P(area), needs m >= 0
    RATIO      majorant + P(area / (1 - area))
    """

    kind: VariantKind = VariantKind.MAJORANT
    m: int | None = None

    def __post_init__(self):
        kind = VariantKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is VariantKind.POWER:
            if self.m is None or isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
                raise DomainError(f"power variant needs an integer m >= 0, got {self.m!r}")
            object.__setattr__(self, "m", int(self.m))
        elif self.m is not None:
            raise DomainError(f"m only applies to the power variant, not {kind.value}")

    @classmethod
    def parse(cls, text: str) -> "ProblemVariant":
        """Parse "majorant", "ratio" or "power:<m>"."""
        name, sep, arg = text.strip().partition(":")
        if name == VariantKind.POWER.value:
            if not sep:
                raise DomainError("power variant needs an exponent, e.g. power:1")
            try:
                m = int(arg)
            except ValueError:
                raise DomainError(f"power exponent {arg!r} is not an integer")
            return cls(VariantKind.POWER, m)
        if sep:
            raise DomainError(f"variant {name!r} takes no argument")
        try:
            return cls(VariantKind(name))
        except ValueError:
            raise DomainError(f"unknown variant {text!r}; use majorant, power:<m> or ratio")

    def __str__(self) -> str:
        if self.kind is VariantKind.POWER:
            return f"power:{self.m}"
        return self.kind.value


@dataclass(frozen=True)
class BohrProblem:
    class_spec: ClassSpec
    polynomial: BohrPolynomial = field(default_factory=BohrPolynomial)
    variant: ProblemVariant = field(default_factory=ProblemVariant)

    def __post_init__(self):
        if self.variant.kind is VariantKind.RATIO and not self.class_spec.is_stable:
            raise DomainError("the ratio variant is only defined for stable classes")
        if self.variant.kind is VariantKind.POWER and self.class_spec.is_stable:
            raise DomainError("the power variant is only defined for the w0h class")

    def as_record(self) -> dict:
        """Flat description used as the leading columns of result tables."""
        alpha = self.class_spec.alpha
        return {
            "class": str(self.class_spec),
            "alpha": math.nan if alpha is None else alpha,
            "poly": str(self.polynomial),
            "variant": str(self.variant),
        }

    def __repr__(self) -> str:
        alpha = f", alpha={self.class_spec.alpha}" if self.class_spec.alpha is not None else ""
        return f"BohrProblem({self.class_spec}{alpha}, P=({self.polynomial}), {self.variant})"


# =============================================================================
# W0H(alpha) equations
# =============================================================================


def _w0h_lhs(r: float, alpha: float, P: BohrPolynomial, m: int | None, eps: float) -> float:
    majorant = majorant_w0h(r, alpha, eps).value
    area = area_ratio_w0h(r, alpha, eps).value
    if m is None:
        head = majorant
    else:
        head = (1.0 if m == 0 else majorant**m) + (majorant - r)
    return head + poly_eval(P, area)


def eval_j1(r: float, alpha: float, P: BohrPolynomial, eps: float = DEFAULT_EPS) -> float:
    """M(r) + P(S_r/pi) - d(alpha)."""
    return _w0h_lhs(r, alpha, P, None, eps) - distance_w0h(alpha, eps).value


def eval_j2(r: float, alpha: float, P: BohrPolynomial, m: int, eps: float = DEFAULT_EPS) -> float:
    """M(r)^m + sum_{n>=2} c_n r^n + P(S_r/pi) - d(alpha); m = 0 gives the constant 1."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m!r}")
    return _w0h_lhs(r, alpha, P, m, eps) - distance_w0h(alpha, eps).value


def _closed_form(r: float, *, log_weight: float, linear: float, constant: float) -> float:
    if not math.isfinite(r) or not 0.0 < r < 1.0:
        raise DomainError(f"closed form needs 0 < r < 1, got {r!r}")
    x = r * r
    return (
        log_weight / r * (1.0 - r) * log1m(r)
        + 16.0 / x * (1.0 - x) * log1m(x)
        - 16.0 / x * li2(x)
        - 3.0 * x
        - linear * r
        + constant
    )


def eval_F_literal(r: float) -> float:
    """Closed form for alpha = 1/2, P(w) = w with the printed constant 29 + 8 log 2."""
    return _closed_form(r, log_weight=4.0, linear=1.0, constant=F_LITERAL_CONSTANT)


def eval_F_corrected(r: float) -> float:
    """Closed form of J1 at alpha = 1/2, P(w) = w; constant 41 - 8 log 2."""
    return _closed_form(r, log_weight=4.0, linear=1.0, constant=F_CORRECTED_CONSTANT)


def eval_T_literal(r: float) -> float:
    """Closed form of J2 at alpha = 1/2, P(w) = w, m = 1."""
    return _closed_form(r, log_weight=8.0, linear=3.0, constant=T_LITERAL_CONSTANT)


# =============================================================================
# Stable classes
# =============================================================================


def _stable_x(r: float) -> float:
    r = check_radius(r)
    return r * r


def stable_majorant_bound(r: float, kind: StableKind) -> float:
    """r/(1-r) for convex, r/(1-r)^2 for univalent."""
    r = check_radius(r)
    if StableKind(kind) is StableKind.CONVEX:
        return r / (1.0 - r)
    return r / (1.0 - r) ** 2


def _area_parts(x: float, kind: StableKind) -> tuple[float, float]:
    """Numerator and denominator of the S_r/pi bound at x = r^2."""
    if StableKind(kind) is StableKind.CONVEX:
        return x, (1.0 - x) ** 2
    # sum n^3 x^n = x (x^2 + 4x + 1) / (1 - x)^4
    return x * (x * x + 4.0 * x + 1.0), (1.0 - x) ** 4


def stable_area_bound(r: float, kind: StableKind) -> float:
    """S_r/pi bound: r^2/(1-r^2)^2 (convex) or (r^6+4r^4+r^2)/(1-r^2)^4 (univalent)."""
    num, den = _area_parts(_stable_x(r), kind)
    return num / den


def stable_area_ratio_bound(r: float, kind: StableKind) -> float:
    """S_r/(pi - S_r) bound, w/(1-w) of ``stable_area_bound``."""
    num, den = _area_parts(_stable_x(r), kind)
    if den - num <= 0.0:
        raise DomainError(
            f"r={r!r} is outside the {StableKind(kind).value} ratio domain "
            "(area bound reaches 1)"
        )
    return num / (den - num)


def _stable_eq(r: float, kind: StableKind, P: BohrPolynomial, *, ratio: bool) -> float:
    area = stable_area_ratio_bound(r, kind) if ratio else stable_area_bound(r, kind)
    return stable_majorant_bound(r, kind) + poly_eval(P, area) - STABLE_RHS[kind]


def eval_stable_convex(r: float, P: BohrPolynomial) -> float:
    return _stable_eq(r, StableKind.CONVEX, P, ratio=False)


def eval_stable_univalent(r: float, P: BohrPolynomial) -> float:
    return _stable_eq(r, StableKind.UNIVALENT, P, ratio=False)


def eval_stable_convex_ratio(r: float, P: BohrPolynomial) -> float:
    return _stable_eq(r, StableKind.CONVEX, P, ratio=True)


def eval_stable_univalent_ratio(r: float, P: BohrPolynomial) -> float:
    return _stable_eq(r, StableKind.UNIVALENT, P, ratio=True)


@lru_cache(maxsize=1)
def univalent_ratio_limit() -> float:
    """Smallest positive root of (1-r^2)^4 = r^6 + 4r^4 + r^2.

    Returns the lower end of the final bracket, where the univalent ratio
    bound is still finite.
    """

    def excess(r: float) -> float:
        num, den = _area_parts(r * r, StableKind.UNIVALENT)
        return num - den

    lo, hi = 0.4, 0.5
    result = refine_root(excess, Bracket(lo, hi, excess(lo), excess(hi)), tol=1e-15)
    logger.debug("univalent ratio limit: %.17g", result.bracket.lo)
    return result.bracket.lo


# =============================================================================
# Problem dispatch
# =============================================================================


def problem_rhs(problem: BohrProblem, eps: float = DEFAULT_EPS) -> float:
    """Right-hand side: d(alpha) for W0H, 1/2 convex, 1/4 univalent."""
    spec = problem.class_spec
    if spec.is_stable:
        return STABLE_RHS[spec.stable_kind]
    return distance_w0h(spec.alpha, eps).value


def problem_lhs(problem: BohrProblem, r: float, eps: float = DEFAULT_EPS) -> float:
    """Left-hand side of the Bohr inequality evaluated on the extremal function."""
    spec, P, variant = problem.class_spec, problem.polynomial, problem.variant
    if not spec.is_stable:
        m = variant.m if variant.kind is VariantKind.POWER else None
        return _w0h_lhs(r, spec.alpha, P, m, eps)
    kind = spec.stable_kind
    ratio = variant.kind is VariantKind.RATIO
    area = stable_area_ratio_bound(r, kind) if ratio else stable_area_bound(r, kind)
    return stable_majorant_bound(r, kind) + poly_eval(P, area)


def radius_equation(problem: BohrProblem, eps: float = DEFAULT_EPS) -> Callable[[float], float]:
    """The increasing scalar function whose zero is the radius of ``problem``."""
    spec, P, variant = problem.class_spec, problem.polynomial, problem.variant
    if spec.kind is ClassKind.W0H:
        alpha = spec.alpha
        if variant.kind is VariantKind.POWER:
            m = variant.m
            return lambda r: eval_j2(r, alpha, P, m, eps)
        return lambda r: eval_j1(r, alpha, P, eps)

    ratio = variant.kind is VariantKind.RATIO
    if spec.kind is ClassKind.STABLE_CONVEX:
        f = eval_stable_convex_ratio if ratio else eval_stable_convex
    else:
        f = eval_stable_univalent_ratio if ratio else eval_stable_univalent
    return lambda r: f(r, P)


def problem_domain(problem: BohrProblem) -> tuple[float, float]:
    """Search interval (lo, hi) for the radius of ``problem``."""
    if problem.variant.kind is not VariantKind.RATIO:
        return 0.0, R_MAX
    if problem.class_spec.kind is ClassKind.STABLE_CONVEX:
        limit = CONVEX_RATIO_LIMIT
    else:
        limit = univalent_ratio_limit()
    return 0.0, limit * (1.0 - _RATIO_DOMAIN_SHRINK)


def series_terms_at(problem: BohrProblem, r: float, eps: float = DEFAULT_EPS) -> int:
    """Series terms summed to evaluate the equation at r (0 for the closed stable bounds)."""
    spec = problem.class_spec
    if spec.is_stable:
        return 0
    return (
        majorant_w0h(r, spec.alpha, eps).terms_used
        + area_ratio_w0h(r, spec.alpha, eps).terms_used
    )


def solve_radius(
    problem: BohrProblem, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS
) -> RadiusResult:
    """Bracket and bisect the radius equation of ``problem`` on its domain."""
    f = radius_equation(problem, eps)
    lo, hi = problem_domain(problem)
    result = refine_root(f, bracket_root(f, hi, lo), tol)
    logger.debug("%r: radius=%r after %d iterations", problem, result.radius, result.iterations)
    return result


__all__ = [
    "CLOSED_FORM_DOMAIN_LO",
    "CONVEX_RATIO_LIMIT",
    "F_CORRECTED_CONSTANT",
    "F_LITERAL_CONSTANT",
    "STABLE_RHS",
    "T_LITERAL_CONSTANT",
    "BohrPolynomial",
    "BohrProblem",
    "ClassKind",
    "ClassSpec",
    "ProblemVariant",
    "VariantKind",
    "eval_F_corrected",
    "eval_F_literal",
    "eval_T_literal",
    "eval_j1",
    "eval_j2",
    "eval_stable_convex",
    "eval_stable_convex_ratio",
    "eval_stable_univalent",
    "eval_stable_univalent_ratio",
    "poly_eval",
    "problem_domain",
    "problem_lhs",
    "problem_rhs",
    "radius_equation",
    "series_terms_at",
    "solve_radius",
    "stable_area_bound",
    "stable_area_ratio_bound",
    "stable_majorant_bound",
    "univalent_ratio_limit",
]
