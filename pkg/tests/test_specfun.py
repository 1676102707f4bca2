import math

import mpmath
import numpy as np
import pytest

from scripts.utils.errors import DomainError
from scripts.utils.specfun import LOG2, PI2_6, li2, li2_series, log1m


def test_li2_endpoints():
    assert li2(0.0) == 0.0
    assert li2(1.0) == PI2_6


def test_li2_at_half():
    assert li2(0.5) == pytest.approx(math.pi**2 / 12 - LOG2**2 / 2, abs=1e-15)


@pytest.mark.parametrize("x", np.linspace(0.0, 1.0, 41)[1:-1])
def test_li2_matches_mpmath(x):
    assert li2(float(x)) == pytest.approx(float(mpmath.polylog(2, float(x))), abs=1e-14)


def test_li2_near_one():
    x = 1.0 - 1e-12
    assert li2(x) == pytest.approx(float(mpmath.polylog(2, x)), abs=1e-13)


def test_reflection_residual():
    for x in np.linspace(0.01, 0.99, 100):
        x = float(x)
        residual = li2(x) + li2(1.0 - x) - (PI2_6 - math.log(x) * math.log(1.0 - x))
        assert abs(residual) <= 1e-12


def test_li2_series_tail_bound_covers_error():
    for x in (0.05, 0.25, 0.5):
        value, tail, terms = li2_series(x)
        assert terms > 0
        assert abs(value - float(mpmath.polylog(2, x))) <= tail + 1e-15


def test_li2_series_zero():
    assert li2_series(0.0) == (0.0, 0.0, 0)


@pytest.mark.parametrize("x", [-0.1, 1.1, math.nan, math.inf])
def test_li2_domain(x):
    with pytest.raises(DomainError):
        li2(x)


def test_log1m():
    assert log1m(1e-20) == -1e-20
    assert log1m(0.5) == pytest.approx(-LOG2, rel=1e-15)
    with pytest.raises(DomainError):
        log1m(1.0)
    with pytest.raises(DomainError):
        log1m(-0.5)


def test_li2_increasing():
    values = [li2(float(x)) for x in np.linspace(0.0, 1.0, 1001)]
    assert np.all(np.diff(values) > 0.0)
