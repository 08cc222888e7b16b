import numpy as np
import pytest

from aclandau import fields
from aclandau.analysis.levels import (cluster_levels, degeneracy_estimate, level_offset,
                                      predicted_degeneracy)
from aclandau.discrete import build_hamiltonian
from aclandau.errors import ClusteringAmbiguous, ZeroField
from aclandau.grid import Grid2D
from aclandau.solver import Spectrum, solve_lowest


def synthetic(values):
    v = np.sort(np.asarray(values, dtype=float))
    return Spectrum(eigenvalues=v, residuals=np.zeros_like(v))


def test_clusters_from_synthetic_spectrum():
    spec = synthetic([0.0, 0.01, 0.02, 1.0, 1.01, 2.0, 2.9])
    cl = cluster_levels(spec, -1, 2.5)
    assert [c.count for c in cl] == [3, 2, 1]
    assert cl[0].mean == pytest.approx(0.01)
    assert [c.expected for c in cl] == [0.0, 1.0, 2.0]
    assert [c.nu for c in cl] == [0, 1, 2]


def test_sigma_shifts_expected():
    cl = cluster_levels(synthetic([1.0, 2.0]), 1, 2.5)
    assert [c.expected for c in cl] == [1.0, 2.0]


def test_ambiguous_cluster():
    # a chain of small gaps that spans more than a level spacing
    spec = synthetic(np.arange(0.0, 1.5, 0.3))
    with pytest.raises(ClusteringAmbiguous) as exc:
        cluster_levels(spec, -1, 2.0)
    assert "members" in exc.value.diagnostics


def test_level_offsets():
    assert level_offset(fields.symmetric(-1)) == 0.0
    assert level_offset(fields.plate(1)) == 1.0
    assert level_offset(fields.standard_landau(1)) == 0.5
    assert level_offset(fields.standard_landau(-1)) == 0.5
    with pytest.raises(ZeroField):
        level_offset(fields.free())


@pytest.mark.parametrize("L,expected", [(8.0, 41), (4.0, 10)])
def test_flux_count(L, expected):
    assert predicted_degeneracy(Grid2D(L, 33)) == expected
    assert expected == round((2 * L) ** 2 / (2 * np.pi))


def test_free_refuses_degeneracy():
    g = Grid2D(2.0, 9)
    spec = solve_lowest(build_hamiltonian(fields.free(), g), 3)
    with pytest.raises(ZeroField):
        degeneracy_estimate(g, spec, 0.0, cfg=fields.free())


def test_small_box_dense_oracle():
    # every eigenvalue of the full matrix: count the lowest level directly
    g = Grid2D.from_spacing(4.0, 0.25)
    H = build_hamiltonian(fields.symmetric(-1), g).matrix.toarray()
    vals = np.linalg.eigvalsh(H)
    direct = int(np.sum(np.abs(vals) < 0.5))
    spec = solve_lowest(build_hamiltonian(fields.symmetric(-1), g), 30, method="dense")
    rep = degeneracy_estimate(g, spec, 0.0)
    assert rep.predicted == 10
    assert rep.window_count == direct
    assert rep.bulk_count is not None
    assert abs(rep.measured - rep.predicted) <= 2
