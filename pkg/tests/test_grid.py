import numpy as np
import pytest
from hypothesis import given, strategies as st

from aclandau.grid import Grid2D


def test_default_geometry():
    g = Grid2D.from_spacing(8.0, 0.125)
    assert g.n == 129
    assert g.h == 0.125
    assert g.m == 127 and g.N == 127**2
    assert g.axis[0] == pytest.approx(-8.0 + 0.125)
    assert g.axis[-1] == pytest.approx(8.0 - 0.125)


def test_origin_is_a_node():
    g = Grid2D(4.0, 33)
    k = g.index_of_point(0.0, 0.0)
    x, y = g.xy
    assert x[k] == 0.0 and y[k] == 0.0


@pytest.mark.parametrize("n", [2, 4, 1, 10])
def test_rejects_bad_n(n):
    with pytest.raises(ValueError):
        Grid2D(1.0, n)


def test_rejects_indivisible_spacing():
    with pytest.raises(ValueError):
        Grid2D.from_spacing(1.0, 0.3)


@given(st.integers(1, 20).map(lambda k: 2 * k + 1))
def test_index_map_bijective(n):
    g = Grid2D(1.0, n)
    ks = [g.index(*g.unindex(k)) for k in range(g.N)]
    assert ks == list(range(g.N))
    x, y = g.xy
    # row-major: x index outer, y index inner
    i, j = g.unindex(g.N - 1)
    assert x[g.index(i, 0)] == x[g.index(i, j)]
    assert np.all(np.diff(y[: g.m]) > 0)
