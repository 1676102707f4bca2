"""
Recomputed published radii next to their printed values.

Input:
    tol   bisection tolerance in r

Each row carries a hard-coded expected status; a MISMATCH that is
expected counts as reproduced.
"""

import pandas as pd

from scripts.utils.cache import cached as _cached
from scripts.utils.verify import ComparisonRow, reproduce_paper_values

COMPARISON_COLUMNS = ["claim_id", "paper_value", "computed_value", "abs_dev", "status", "note"]


def paper_comparison_rows(tol: float) -> list[ComparisonRow]:
    return reproduce_paper_values(tol)


@_cached
def paper_comparison_table(paper_comparison_rows: list[ComparisonRow]) -> pd.DataFrame:
    """
    Comparison table in claim order.

    @asset
    """
    return pd.DataFrame(
        [
            (
                row.claim_id,
                row.paper_value,
                row.computed_value,
                row.abs_dev,
                row.status.value,
                row.note,
            )
            for row in paper_comparison_rows
        ],
        columns=COMPARISON_COLUMNS,
    )


def reproduction_matches_expectations(paper_comparison_rows: list[ComparisonRow]) -> bool:
    """True iff every row has its expected status."""
    return all(row.as_expected for row in paper_comparison_rows)
