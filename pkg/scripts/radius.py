"""
Bohr radius of a single problem.

Inputs:
    bohr_problem   class, polynomial P and variant (BohrProblem)
    tol            bisection tolerance in r

Outputs:
    radius_result  RadiusResult with bracket and residual
    radius_record  one-row table: class, alpha, poly, variant, radius,
                   residual, iterations, converged
"""

import pandas as pd

from scripts.utils.cache import cached as _cached
from scripts.utils.equations import BohrProblem, solve_radius
from scripts.utils.solver import RadiusResult

RECORD_COLUMNS = [
    "class",
    "alpha",
    "poly",
    "variant",
    "radius",
    "residual",
    "iterations",
    "converged",
]


def radius_result(bohr_problem: BohrProblem, tol: float) -> RadiusResult:
    """
    Bracket and bisect the radius equation of the problem.

    Raises NoRootError when the equation has no sign change (e.g. power:0).
    """
    return solve_radius(bohr_problem, tol)


@_cached
def radius_record(bohr_problem: BohrProblem, radius_result: RadiusResult) -> pd.DataFrame:
    """
    The computed radius as a single record.

    @asset
    """
    record = {
        **bohr_problem.as_record(),
        "radius": radius_result.radius,
        "residual": radius_result.residual,
        "iterations": radius_result.iterations,
        "converged": radius_result.converged,
    }
    return pd.DataFrame([record], columns=RECORD_COLUMNS)
