"""
Rendering of result tables as CSV, JSON or markdown.

All floats are written with 12 significant digits; NaN becomes an empty
CSV field or JSON null.
"""

import json
import math
from enum import Enum

import numpy as np
import pandas as pd

SIGNIFICANT_DIGITS = 12
FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"
FORMATS = ("csv", "json", "markdown")


def format_number(x: float) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return ""
    return format(x, f".{SIGNIFICANT_DIGITS}g")


def _json_value(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(format(value, f".{SIGNIFICANT_DIGITS}g"))
    return value


def frame_to_records(df: pd.DataFrame) -> list[dict]:
    return [
        {col: _json_value(val) for col, val in zip(df.columns, row)}
        for row in df.itertuples(index=False, name=None)
    ]


def frame_to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def frame_to_json(df: pd.DataFrame, single: bool = False) -> str:
    """JSON array of records, or one object when ``single`` and the frame has one row."""
    records = frame_to_records(df)
    if single and len(records) == 1:
        return json.dumps(records[0], indent=2)
    return json.dumps(records, indent=2)


def render_markdown(df: pd.DataFrame) -> str:
    def cell(value) -> str:
        if isinstance(value, Enum):
            return str(value.value)
        if isinstance(value, (float, np.floating, bool, np.bool_, int, np.integer)):
            return format_number(value)
        return str(value).replace("|", "\\|")

    lines = [
        "| " + " | ".join(df.columns) + " |",
        "|" + "|".join("---" for _ in df.columns) + "|",
    ]
    for row in df.itertuples(index=False, name=None):
        lines.append("| " + " | ".join(cell(v) for v in row) + " |")
    return "\n".join(lines) + "\n"


def render(df: pd.DataFrame, fmt: str, single: bool = False) -> str:
    if fmt == "csv":
        return frame_to_csv(df)
    if fmt == "json":
        return frame_to_json(df, single=single) + "\n"
    if fmt == "markdown":
        return render_markdown(df)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


__all__ = [
    "FLOAT_FORMAT",
    "FORMATS",
    "format_number",
    "frame_to_csv",
    "frame_to_json",
    "frame_to_records",
    "render",
    "render_markdown",
]
