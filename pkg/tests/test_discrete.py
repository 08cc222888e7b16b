import numpy as np
import pytest
import scipy.sparse as sp

from aclandau import fields
from aclandau.analysis.convergence import fit_order
from aclandau.discrete import (build_hamiltonian, build_kinematic_momentum, commutator_residual,
                               derivative_matrices, gauge_covariance_residual, gaussian)
from aclandau.errors import BoundaryContamination
from aclandau.fields import GaugeFunction
from aclandau.grid import Grid2D

CONFIGS = [fields.symmetric(-1), fields.symmetric(1), fields.plate(-1), fields.standard_landau(1),
           fields.free(), fields.gauge_transform(fields.plate(1), GaugeFunction.from_coeffs({(1, 1): 0.5}))]


@pytest.mark.parametrize("cfg", CONFIGS, ids=lambda c: c.kind.value)
def test_operators_hermitian_and_five_point(cfg):
    g = Grid2D(3.0, 25)
    for op in (build_hamiltonian(cfg, g), build_kinematic_momentum(cfg, g, "x"),
               build_kinematic_momentum(cfg, g, "y")):
        M = op.matrix
        assert abs(M - M.getH()).max() <= 1e-13
        assert np.diff(M.indptr).max() <= 5


def test_free_hamiltonian_is_half_laplacian():
    g = Grid2D(2.0, 17)
    H = build_hamiltonian(fields.free(), g).matrix.toarray()
    h = g.h
    np.testing.assert_allclose(np.diag(H), 2 / h**2)
    k = g.index(3, 4)
    for nb in (g.index(2, 4), g.index(4, 4), g.index(3, 3), g.index(3, 5)):
        assert H[k, nb] == pytest.approx(-1 / (2 * h**2))
    assert np.count_nonzero(H[k]) == 5


def test_momentum_diagonal_matches_potential():
    g = Grid2D(4.0, 33)
    px = build_kinematic_momentum(fields.symmetric(1), g, "x").matrix
    k = g.index_of_point(1.0, 2.0)
    # -coupling * a_x = -(1)(-y/2) = +1 at y = 2
    assert px[k, k] == pytest.approx(1.0)


def test_axis_z_not_provided():
    with pytest.raises(ValueError):
        build_kinematic_momentum(fields.symmetric(1), Grid2D(1.0, 5), "z")


def test_scalar_term_on_diagonal():
    g = Grid2D(2.0, 17)
    free = build_hamiltonian(fields.free(), g).matrix.diagonal()
    sym = build_hamiltonian(fields.symmetric(-1), g).matrix.diagonal()
    x, y = g.xy
    np.testing.assert_allclose(sym - free, (x**2 + y**2) / 8 - 0.5, atol=1e-12)


def test_plane_wave_momentum_second_order():
    errs, hs = [], [0.2, 0.1, 0.05]
    kx = 1.3
    for h in hs:
        g = Grid2D.from_spacing(4.0, h)
        x, y = g.xy
        window = np.exp(-(x**2 + y**2) / 2)
        psi = np.exp(1j * kx * x) * window
        px = build_kinematic_momentum(fields.free(), g, "x").matrix
        inner = g.inner_mask(1.0)
        dpsi = (kx - 1j * (-x)) * psi  # -i d/dx of psi analytically
        errs.append(np.max(np.abs((px @ psi - dpsi)[inner])))
    fit = fit_order(hs, errs)
    assert fit.slope == pytest.approx(2.0, abs=0.1)


def test_free_commutator_vanishes():
    g = Grid2D(8.0, 65)
    assert commutator_residual(fields.free(), g, gaussian()) < 1e-12


@pytest.mark.parametrize("cfg", [fields.symmetric(-1), fields.plate(-1), fields.plate(1)],
                         ids=["sym-", "plate-", "plate+"])
def test_commutator_converges_second_order(cfg):
    hs = [0.5, 0.25, 0.125]
    errs = [commutator_residual(cfg, Grid2D.from_spacing(8.0, h), gaussian()) for h in hs]
    assert errs[-1] < 1e-2
    assert fit_order(hs, errs).slope == pytest.approx(2.0, abs=0.3)


def test_boundary_contamination():
    with pytest.raises(BoundaryContamination):
        commutator_residual(fields.symmetric(-1), Grid2D(2.0, 17), gaussian())


def test_gauge_covariance_second_order():
    chi = GaugeFunction.from_coeffs({(1, 1): 0.5})
    base = fields.symmetric(-1)
    t = fields.gauge_transform(base, chi)
    hs = [0.5, 0.25, 0.125]
    errs = [gauge_covariance_residual(base, t, chi, Grid2D.from_spacing(8.0, h), gaussian()) for h in hs]
    assert fit_order(hs, errs).slope == pytest.approx(2.0, abs=0.3)


def test_dump_format(tmp_path):
    g = Grid2D(1.0, 5)
    op = build_hamiltonian(fields.symmetric(1), g)
    path = tmp_path / "h.txt"
    op.dump(path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# N=9")
    assert len(lines) - 1 == op.matrix.nnz
    r, c, re, im = lines[1].split()
    assert op.matrix[int(r), int(c)] == complex(float(re), float(im))


def test_derivative_matrices_shapes():
    g = Grid2D(1.0, 7)
    Dx, Dy, lap = derivative_matrices(g)
    assert Dx.shape == Dy.shape == lap.shape == (g.N, g.N)
    assert sp.issparse(Dx)
