"""
Radius of W0H(alpha) over a grid of alpha.

Inputs:
    alpha_min, alpha_max, steps   grid, 0 < alpha_min <= alpha_max <= 1
    sweep_polynomial              BohrPolynomial applied to the area term
    sweep_variant                 majorant or power:<m>
    tol                           bisection tolerance in r

Output columns of radius_sweep: alpha, radius, residual, terms_used, converged.
Rows without a root have an empty radius and converged = False.
"""

import logging
import math

import numpy as np
import pandas as pd

from scripts.utils.cache import cached as _cached
from scripts.utils.equations import (
    BohrPolynomial,
    BohrProblem,
    ClassSpec,
    ProblemVariant,
    series_terms_at,
    solve_radius,
)
from scripts.utils.errors import DomainError, NoRootError, NonConvergenceError

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["alpha", "radius", "residual", "terms_used", "converged"]


def alpha_grid(alpha_min: float, alpha_max: float, steps: int) -> list[float]:
    """Evenly spaced alpha values; a single step gives [alpha_min]."""
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps!r}")
    if not (0.0 < alpha_min <= alpha_max <= 1.0):
        raise DomainError(
            f"alpha range must satisfy 0 < alpha_min <= alpha_max <= 1, "
            f"got [{alpha_min!r}, {alpha_max!r}]"
        )
    if steps == 1:
        return [float(alpha_min)]
    return [float(a) for a in np.linspace(alpha_min, alpha_max, steps)]


def _sweep_row(problem: BohrProblem, alpha: float, tol: float) -> dict:
    try:
        result = solve_radius(problem, tol)
    except NoRootError as exc:
        logger.warning("alpha=%r: %s", alpha, exc)
        return {
            "alpha": alpha,
            "radius": math.nan,
            "residual": math.nan,
            "terms_used": 0,
            "converged": False,
        }
    except NonConvergenceError as exc:
        logger.warning("alpha=%r: %s", alpha, exc)
        result = exc.result

    return {
        "alpha": alpha,
        "radius": result.radius,
        "residual": result.residual,
        "terms_used": series_terms_at(problem, result.radius),
        "converged": result.converged,
    }


@_cached
def radius_sweep(
    alpha_grid: list[float],
    sweep_polynomial: BohrPolynomial,
    sweep_variant: ProblemVariant,
    tol: float,
) -> pd.DataFrame:
    """
    One radius per alpha, sorted by alpha.

    @asset
    """
    rows = [
        _sweep_row(BohrProblem(ClassSpec.w0h(alpha), sweep_polynomial, sweep_variant), alpha, tol)
        for alpha in alpha_grid
    ]
    df = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    return df.sort_values("alpha", kind="stable").reset_index(drop=True)
