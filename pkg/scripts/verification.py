"""
Inequality sweep on the extremal function of a problem.

Inputs:
    bohr_problem       BohrProblem
    grid_n             grid points in [0, min(domain, 1.5 radius)]
    tol                bisection tolerance in r
    crosscheck_grid_n  grid points in [0.1, 0.9] for the alpha = 1/2 closed forms
"""

import math

import pandas as pd

from scripts.utils.cache import cached as _cached
from scripts.utils.equations import BohrProblem
from scripts.utils.verify import VerificationReport, cross_check_closed_forms, verify_problem


def verification_report(bohr_problem: BohrProblem, grid_n: int, tol: float) -> VerificationReport:
    return verify_problem(bohr_problem, grid_n, tol)


@_cached
def verification_grid(verification_report: VerificationReport) -> pd.DataFrame:
    """
    Grid points r, lhs, rhs, holds ordered by r.

    @asset
    """
    return pd.DataFrame(
        [(p.r, p.lhs, p.rhs, p.holds) for p in verification_report.grid_points],
        columns=["r", "lhs", "rhs", "holds"],
    )


@_cached
def verification_summary(
    bohr_problem: BohrProblem, verification_report: VerificationReport
) -> pd.DataFrame:
    """
    One-row verdict: problem, radius, verdict, crosscheck deviation, grid size.

    @asset
    """
    radius = verification_report.radius
    record = {
        **bohr_problem.as_record(),
        "radius": math.nan if radius is None else radius.radius,
        "verdict": verification_report.verdict.value,
        "max_crosscheck_dev": verification_report.max_crosscheck_dev,
        "grid_points": len(verification_report.grid_points),
    }
    return pd.DataFrame([record])


def closed_form_deviation(crosscheck_grid_n: int) -> float:
    return cross_check_closed_forms(crosscheck_grid_n)
