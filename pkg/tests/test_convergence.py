import numpy as np
import pytest
from hypothesis import given, strategies as st

from aclandau.analysis.convergence import fit_order


@given(st.floats(0.5, 4), st.floats(0.01, 10))
def test_exact_power_law(p, c):
    h = np.array([0.4, 0.2, 0.1, 0.05])
    fit = fit_order(h, c * h**p)
    assert fit.slope == pytest.approx(p, abs=1e-9)
    assert fit.r2 == pytest.approx(1.0)
    assert fit.monotone


def test_non_monotone_flagged():
    fit = fit_order([0.4, 0.2, 0.1], [1e-2, 1e-3, 2e-3])
    assert not fit.monotone


def test_rejects_zero_error():
    with pytest.raises(ValueError):
        fit_order([0.2, 0.1], [0.0, 1.0])
