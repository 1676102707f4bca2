import math

import numpy as np
import pytest

from scripts.utils.equations import (
    CLOSED_FORM_DOMAIN_LO,
    CONVEX_RATIO_LIMIT,
    BohrPolynomial,
    BohrProblem,
    ClassKind,
    ClassSpec,
    ProblemVariant,
    VariantKind,
    eval_F_corrected,
    eval_F_literal,
    eval_j1,
    eval_j2,
    eval_stable_convex,
    eval_stable_convex_ratio,
    eval_stable_univalent,
    eval_stable_univalent_ratio,
    eval_T_literal,
    poly_eval,
    problem_domain,
    problem_lhs,
    problem_rhs,
    radius_equation,
    series_terms_at,
    solve_radius,
    stable_area_bound,
    stable_area_ratio_bound,
    stable_majorant_bound,
    univalent_ratio_limit,
)
from scripts.utils.errors import DomainError, NoRootError
from scripts.utils.series import (
    R_MAX,
    StableKind,
    area_ratio_stable,
    area_ratio_w0h,
    majorant_w0h,
)
from scripts.utils.solver import bracket_root, check_monotone, refine_root
from scripts.utils.specfun import LOG2
from tests import oracle

IDENTITY = BohrPolynomial((1.0,))
ZERO = BohrPolynomial()
D_HALF = 8.0 * LOG2 - 5.0


def _root(f, lo=0.0, hi=R_MAX, tol=1e-12):
    return refine_root(f, bracket_root(f, hi, lo), tol).radius


# =============================================================================
# Polynomial
# =============================================================================


def test_poly_eval_examples():
    assert poly_eval(IDENTITY, 0.25) == 0.25
    assert poly_eval(ZERO, 5.0) == 0.0
    assert poly_eval(BohrPolynomial((16 / 9, 18.6095)), 0.5) == pytest.approx(5.541264, abs=1e-6)
    assert IDENTITY(0.0) == 0.0


def test_poly_eval_negative_argument():
    with pytest.raises(DomainError):
        poly_eval(IDENTITY, -0.1)


def test_polynomial_parse():
    assert BohrPolynomial.parse("") == ZERO
    assert BohrPolynomial.parse("  ") == ZERO
    assert BohrPolynomial.parse("1, 2.5").coefficients == (1.0, 2.5)
    assert BohrPolynomial.parse("0,1").degree == 2
    assert str(BohrPolynomial.parse("1.7777777777777777,18.6095")) == "1.77777777778,18.6095"


@pytest.mark.parametrize("text", ["1,0", "a", "-1", "nan", "inf", "1,,2"])
def test_polynomial_parse_rejects(text):
    with pytest.raises(DomainError):
        BohrPolynomial.parse(text)


# =============================================================================
# Problem description
# =============================================================================


def test_class_spec():
    assert ClassSpec.w0h(0.5).alpha == 0.5
    assert ClassSpec("stable-convex").kind is ClassKind.STABLE_CONVEX
    assert ClassSpec.stable_univalent().stable_kind is StableKind.UNIVALENT
    with pytest.raises(DomainError):
        ClassSpec(ClassKind.W0H)
    with pytest.raises(DomainError):
        ClassSpec.w0h(0.0)
    with pytest.raises(DomainError):
        ClassSpec(ClassKind.STABLE_CONVEX, 0.5)


def test_variant_parse():
    assert ProblemVariant.parse("majorant") == ProblemVariant()
    assert ProblemVariant.parse("ratio").kind is VariantKind.RATIO
    power = ProblemVariant.parse("power:2")
    assert (power.kind, power.m) == (VariantKind.POWER, 2)
    assert str(power) == "power:2"


@pytest.mark.parametrize("text", ["power", "power:-1", "power:x", "foo", "ratio:1"])
def test_variant_parse_rejects(text):
    with pytest.raises(DomainError):
        ProblemVariant.parse(text)


def test_problem_combinations():
    with pytest.raises(DomainError):
        BohrProblem(ClassSpec.w0h(0.5), IDENTITY, ProblemVariant(VariantKind.RATIO))
    with pytest.raises(DomainError):
        BohrProblem(ClassSpec.stable_convex(), IDENTITY, ProblemVariant(VariantKind.POWER, 1))


def test_problem_record():
    record = BohrProblem(ClassSpec.stable_convex(), IDENTITY).as_record()
    assert record["class"] == "stable-convex"
    assert math.isnan(record["alpha"])
    assert record["poly"] == "1"
    assert record["variant"] == "majorant"


# =============================================================================
# W0H(alpha) equations
# =============================================================================


def test_j1_at_zero():
    assert eval_j1(0.0, 0.5, IDENTITY) == pytest.approx(-D_HALF, abs=1e-12)
    assert eval_j1(0.0, 0.5, IDENTITY) == pytest.approx(-0.545177, abs=1e-6)


def test_j2_at_zero():
    assert eval_j2(0.0, 0.5, IDENTITY, 1) == pytest.approx(-D_HALF, abs=1e-12)
    assert eval_j2(0.0, 0.5, IDENTITY, 0) == pytest.approx(1.0 - D_HALF, abs=1e-12)
    with pytest.raises(DomainError):
        eval_j2(0.1, 0.5, IDENTITY, -1)


def test_j1_matches_oracle():
    d = oracle.distance(0.75)
    for r in (0.1, 0.3, 0.5):
        assert eval_j1(r, 0.75, IDENTITY) == pytest.approx(oracle.j1(r, 0.75, (1.0,), d), abs=1e-11)


def test_j1_roots():
    half = _root(lambda r: eval_j1(r, 0.5, ZERO))
    assert half == pytest.approx(0.4057, abs=1e-3)
    identity = _root(lambda r: eval_j1(r, 0.5, IDENTITY))
    assert identity == pytest.approx(0.3325, abs=1e-3)
    d = oracle.distance(0.5)
    expected = oracle.bisect(lambda r: oracle.j1(r, 0.5, (1.0,), d), 0.0, 0.9)
    assert identity == pytest.approx(expected, abs=1e-9)


def test_j2_root():
    assert _root(lambda r: eval_j2(r, 0.5, IDENTITY, 1)) == pytest.approx(0.3021, abs=1e-3)
    with pytest.raises(NoRootError):
        bracket_root(lambda r: eval_j2(r, 0.5, IDENTITY, 0), R_MAX)


def test_j2_square():
    # M^2 < r near the radius, so the squared variant allows a larger disk
    square = _root(lambda r: eval_j2(r, 0.5, IDENTITY, 2))
    assert _root(lambda r: eval_j1(r, 0.5, IDENTITY)) < square < R_MAX


# =============================================================================
# Closed forms
# =============================================================================


def test_f_literal_signs():
    assert eval_F_literal(0.5) < 0.0
    assert eval_F_literal(0.7) > 0.0
    assert abs(eval_F_literal(0.600881)) < 5e-3


def test_f_corrected_offset():
    for r in (0.1, 0.3325, 0.6, 0.95):
        assert eval_F_corrected(r) - eval_F_literal(r) == pytest.approx(
            12.0 - 16.0 * LOG2, abs=1e-12
        )


@pytest.mark.parametrize("r", np.linspace(0.1, 0.9, 9))
def test_closed_forms_equal_series_equations(r):
    r = float(r)
    assert eval_F_corrected(r) == pytest.approx(eval_j1(r, 0.5, IDENTITY), abs=1e-9)
    assert eval_T_literal(r) == pytest.approx(eval_j2(r, 0.5, IDENTITY, 1), abs=1e-9)


def test_closed_form_spot_values():
    assert abs(eval_F_corrected(0.3325)) < 1e-2
    assert eval_F_corrected(0.2) < 0.0
    assert abs(eval_T_literal(0.302059)) < 5e-3
    assert eval_T_literal(0.2) < 0.0


@pytest.mark.parametrize("f", [eval_F_literal, eval_F_corrected, eval_T_literal])
@pytest.mark.parametrize("r", [0.0, 1.0, -0.5])
def test_closed_forms_domain(f, r):
    with pytest.raises(DomainError):
        f(r)


def test_closed_form_roots():
    lo = CLOSED_FORM_DOMAIN_LO
    assert _root(eval_F_literal, lo) == pytest.approx(0.600881, abs=5e-4)
    assert _root(eval_T_literal, lo) == pytest.approx(0.302059, abs=5e-4)

    corrected = _root(eval_F_corrected, lo)
    j1 = _root(lambda r: eval_j1(r, 0.5, IDENTITY))
    assert abs(corrected - j1) <= 1e-6
    assert abs(j1 - 0.600881) > 0.2

    j2 = _root(lambda r: eval_j2(r, 0.5, IDENTITY, 1))
    assert abs(_root(eval_T_literal, lo) - j2) <= 1e-4


# =============================================================================
# Stable classes
# =============================================================================


def test_stable_values_at_zero():
    for P in (ZERO, IDENTITY):
        assert eval_stable_convex(0.0, P) == -0.5
        assert eval_stable_univalent(0.0, P) == -0.25
        assert eval_stable_convex_ratio(0.0, P) == -0.5
        assert eval_stable_univalent_ratio(0.0, P) == -0.25


def test_stable_convex_baseline():
    assert eval_stable_convex(1.0 / 3.0, ZERO) == pytest.approx(0.0, abs=1e-15)
    assert eval_stable_convex_ratio(1.0 / 3.0, ZERO) == pytest.approx(0.0, abs=1e-15)


def test_stable_roots():
    assert _root(lambda r: eval_stable_convex(r, ZERO)) == pytest.approx(1 / 3, abs=1e-12)
    univalent = _root(lambda r: eval_stable_univalent(r, ZERO))
    assert univalent == pytest.approx(3.0 - 2.0 * math.sqrt(2.0), abs=1e-12)

    convex_1 = _root(lambda r: eval_stable_convex(r, IDENTITY))
    assert convex_1 == pytest.approx(0.2869, abs=1e-3)
    assert convex_1 == pytest.approx(
        oracle.bisect(lambda r: oracle.stable_convex(r, (1.0,)), 0.0, 0.9), abs=1e-9
    )
    univalent_1 = _root(lambda r: eval_stable_univalent(r, IDENTITY))
    assert univalent_1 == pytest.approx(0.1566, abs=1e-3)
    assert univalent_1 == pytest.approx(
        oracle.bisect(lambda r: oracle.stable_univalent(r, (1.0,)), 0.0, 0.9), abs=1e-9
    )


def test_ratio_roots():
    hi = CONVEX_RATIO_LIMIT * (1 - 1e-9)
    assert _root(lambda r: eval_stable_convex_ratio(r, IDENTITY), hi=hi) == pytest.approx(
        0.2833, abs=1e-3
    )
    hi = univalent_ratio_limit() * (1 - 1e-9)
    baseline = _root(lambda r: eval_stable_univalent_ratio(r, ZERO), hi=hi)
    assert baseline == pytest.approx(3.0 - 2.0 * math.sqrt(2.0), abs=1e-12)
    ratio_1 = _root(lambda r: eval_stable_univalent_ratio(r, IDENTITY), hi=hi)
    assert ratio_1 < _root(lambda r: eval_stable_univalent(r, IDENTITY))


def test_ratio_domain():
    assert CONVEX_RATIO_LIMIT == pytest.approx(0.618034, abs=1e-6)
    with pytest.raises(DomainError):
        eval_stable_convex_ratio(0.62, IDENTITY)

    limit = univalent_ratio_limit()
    assert 0.45 < limit < 0.46
    x = limit * limit
    assert (1 - x) ** 4 - (x**3 + 4 * x * x + x) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        eval_stable_univalent_ratio(0.47, IDENTITY)


@pytest.mark.parametrize("kind", list(StableKind))
@pytest.mark.parametrize("r", [0.1, 0.3, 0.4])
def test_stable_bounds_match_series(kind, r):
    assert stable_area_bound(r, kind) == pytest.approx(area_ratio_stable(r, kind).value, abs=1e-12)
    area = stable_area_bound(r, kind)
    assert stable_area_ratio_bound(r, kind) == pytest.approx(area / (1 - area), rel=1e-12)
    assert stable_area_ratio_bound(r, kind) >= area


def test_stable_majorant_bound():
    assert stable_majorant_bound(0.5, StableKind.CONVEX) == 1.0
    assert stable_majorant_bound(0.5, StableKind.UNIVALENT) == 2.0
    with pytest.raises(DomainError):
        stable_majorant_bound(1.0, StableKind.CONVEX)


# =============================================================================
# Problem dispatch
# =============================================================================


PROBLEMS = [
    BohrProblem(ClassSpec.w0h(0.5), IDENTITY),
    BohrProblem(ClassSpec.w0h(0.75), IDENTITY, ProblemVariant(VariantKind.POWER, 1)),
    BohrProblem(ClassSpec.stable_convex(), IDENTITY),
    BohrProblem(ClassSpec.stable_univalent(), IDENTITY, ProblemVariant(VariantKind.RATIO)),
]


@pytest.mark.parametrize("problem", PROBLEMS, ids=repr)
def test_equation_is_lhs_minus_rhs(problem):
    f = radius_equation(problem)
    for r in (0.0, 0.1, 0.2, 0.3):
        assert f(r) == problem_lhs(problem, r) - problem_rhs(problem)


def test_problem_rhs():
    assert problem_rhs(PROBLEMS[0]) == pytest.approx(D_HALF, abs=1e-12)
    assert problem_rhs(PROBLEMS[2]) == 0.5
    assert problem_rhs(PROBLEMS[3]) == 0.25


def test_problem_domain():
    assert problem_domain(PROBLEMS[0]) == (0.0, R_MAX)
    lo, hi = problem_domain(BohrProblem(ClassSpec.stable_convex(), IDENTITY, ProblemVariant("ratio")))
    assert lo == 0.0
    assert hi < CONVEX_RATIO_LIMIT
    assert problem_domain(PROBLEMS[3])[1] < univalent_ratio_limit()


def test_series_terms_at():
    assert series_terms_at(PROBLEMS[2], 0.3) == 0
    assert series_terms_at(PROBLEMS[0], 0.3) > 10
    assert series_terms_at(PROBLEMS[0], 0.0) == 0


def test_solve_radius():
    result = solve_radius(BohrProblem(ClassSpec.stable_convex()))
    assert result.converged
    assert result.radius == pytest.approx(1 / 3, abs=1e-12)
    with pytest.raises(NoRootError):
        solve_radius(BohrProblem(ClassSpec.w0h(0.5), IDENTITY, ProblemVariant.parse("power:0")))


# =============================================================================
# Monotonicity
# =============================================================================


def test_j1_monotone_on_full_domain():
    assert check_monotone(lambda r: eval_j1(r, 0.5, IDENTITY), R_MAX, 1000)


@pytest.mark.parametrize(
    "f",
    [
        lambda r: eval_j1(r, 0.25, BohrPolynomial((16 / 9, 18.6095))),
        lambda r: eval_j2(r, 0.5, IDENTITY, 1),
        lambda r: eval_j2(r, 1.0, IDENTITY, 3),
        lambda r: eval_stable_convex(r, IDENTITY),
        lambda r: eval_stable_univalent(r, BohrPolynomial((1.0, 1.0))),
    ],
)
def test_equations_monotone(f):
    assert check_monotone(f, 0.95, 1000)


@pytest.mark.parametrize("f", [eval_F_literal, eval_F_corrected, eval_T_literal])
def test_closed_forms_monotone(f):
    assert check_monotone(f, 0.99, 1000, domain_lo=0.01)


def test_ratio_equations_monotone():
    hi = CONVEX_RATIO_LIMIT * (1 - 1e-9)
    assert check_monotone(lambda r: eval_stable_convex_ratio(r, IDENTITY), hi, 1000)
    hi = univalent_ratio_limit() * (1 - 1e-9)
    assert check_monotone(lambda r: eval_stable_univalent_ratio(r, IDENTITY), hi, 1000)


def test_ratio_monotone_records_domain_end():
    check = check_monotone(lambda r: eval_stable_convex_ratio(r, IDENTITY), 0.95, 1000)
    assert check.increasing
    assert check.skipped > 0
    assert CONVEX_RATIO_LIMIT - 0.95 / 999 <= check.domain_end < CONVEX_RATIO_LIMIT


def test_power_lhs_raises_the_majorant():
    alpha, r = 0.5, 0.3
    problem = BohrProblem(ClassSpec.w0h(alpha), IDENTITY, ProblemVariant.parse("power:2"))
    majorant = majorant_w0h(r, alpha).value
    area = area_ratio_w0h(r, alpha).value
    expected = majorant**2 + (majorant - r) + area
    assert problem_lhs(problem, r) == pytest.approx(expected, abs=1e-14)
    assert problem_lhs(problem, r) != pytest.approx(r**2 + (majorant - r) + area, abs=1e-6)
