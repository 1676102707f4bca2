"""
Parquet cache for DataFrame-returning pipeline nodes.

Each decorated node writes its result to {cache dir}/{node name}.parquet.
The directory is results/cache/ under the project root unless the
BOHR_CACHE_DIR environment variable says otherwise; an empty value turns
the cache off.
"""

import logging
import os
from functools import wraps
from pathlib import Path

import pandas as pd

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent.parent
CACHE_ENV_VAR = "BOHR_CACHE_DIR"


def cache_dir() -> Path | None:
    """Current cache directory, or None when caching is disabled."""
    value = os.getenv(CACHE_ENV_VAR)
    if value is None:
        return PROJECT_ROOT / "results" / "cache"
    if not value.strip():
        return None
    return Path(value)


def cached(func):
    """
    Decorator that caches DataFrame outputs as parquet files.

    Non-DataFrame results pass through untouched.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        result = func(*args, **kwargs)

        directory = cache_dir()
        if directory is not None and isinstance(result, pd.DataFrame):
            directory.mkdir(parents=True, exist_ok=True)
            cache_path = directory / f"{func.__name__}.parquet"
            result.to_parquet(cache_path, index=False)
            logger.debug("cached %s -> %s", func.__name__, cache_path)

        return result

    return wrapper


__all__ = ["CACHE_ENV_VAR", "cache_dir", "cached"]
