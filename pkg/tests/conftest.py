import pytest

from scripts.utils.cache import CACHE_ENV_VAR


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    """Send parquet cache writes to a per-test directory."""
    path = tmp_path / "cache"
    monkeypatch.setenv(CACHE_ENV_VAR, str(path))
    return path
