"""Five-point finite-difference discretization of the minimal-coupling Hamiltonian.

    Pi = -i grad_h - coupling * a(x, y)
    H  = 1/2 [-lap_h + i coupling (a.grad_h + grad_h.a) + coupling^2 |a|^2] + s(x, y)

Central differences on the interior nodes, Dirichlet walls at x, y = +-L. The coupling term is the
symmetrized product, which keeps every operator exactly Hermitian.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
import scipy.sparse as sp

from .errors import BoundaryContamination
from .fields import FieldConfig
from .grid import Grid2D

HERMITIAN_TOL = 1e-13
MAX_ROW_NNZ = 5
SUPPORT_MARGIN = 5  # grid spacings kept clear of the wall by test functions
SUPPORT_RTOL = 1e-6  # relative size tolerated inside the wall band


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    matrix: sp.csr_matrix
    grid: Grid2D
    label: str = ""

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.grid.N, self.grid.N):
            raise ValueError(f"matrix shape {m.shape} does not match grid dimension {self.grid.N}")
        diff = abs(m - m.getH())
        if diff.nnz and diff.max() > HERMITIAN_TOL:
            raise ValueError(f"{self.label}: operator not Hermitian (max |M - M^H| = {diff.max():.3e})")
        row_nnz = np.diff(m.indptr)
        if row_nnz.size and row_nnz.max() > MAX_ROW_NNZ:
            raise ValueError(f"{self.label}: stencil wider than five points")

    @property
    def N(self) -> int:
        return self.grid.N

    def __matmul__(self, v):
        return self.matrix @ v

    def dump(self, path) -> None:
        """Debug dump: one header line, then ``row col re im`` per nonzero."""
        coo = self.matrix.tocoo()
        g = self.grid
        with open(path, "w") as fh:
            fh.write(f"# N={g.N} L={g.L!r} n={g.n} h={g.h!r} label={self.label}\n")
            order = np.lexsort((coo.col, coo.row))
            for r, c, v in zip(coo.row[order], coo.col[order], coo.data[order]):
                fh.write(f"{r} {c} {v.real:.17g} {v.imag:.17g}\n")


def _first_derivative_1d(n: int, h: float) -> sp.csr_matrix:
    off = np.ones(n - 1) / (2 * h)
    return sp.diags([-off, off], [-1, 1], format="csr")


def _second_derivative_1d(n: int, h: float) -> sp.csr_matrix:
    return sp.diags([np.ones(n - 1), -2 * np.ones(n), np.ones(n - 1)], [-1, 0, 1], format="csr") / h**2


def derivative_matrices(g: Grid2D):
    """Central first derivatives D_x, D_y and the five-point Laplacian."""
    eye = sp.identity(g.m, format="csr")
    d1 = _first_derivative_1d(g.m, g.h)
    d2 = _second_derivative_1d(g.m, g.h)
    Dx = sp.kron(d1, eye, format="csr")
    Dy = sp.kron(eye, d1, format="csr")
    lap = (sp.kron(d2, eye) + sp.kron(eye, d2)).tocsr()
    return Dx, Dy, lap


def _potential_on_grid(cfg: FieldConfig, g: Grid2D):
    x, y = g.xy
    ax = np.broadcast_to(cfg.ax(x, y), x.shape).astype(float)
    ay = np.broadcast_to(cfg.ay(x, y), x.shape).astype(float)
    return ax, ay


def build_kinematic_momentum(cfg: FieldConfig, g: Grid2D, axis: str) -> DiscreteOperator:
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y' (motion is planar, Pi_z = 0), got {axis!r}")
    Dx, Dy, _ = derivative_matrices(g)
    ax, ay = _potential_on_grid(cfg, g)
    D, a = (Dx, ax) if axis == "x" else (Dy, ay)
    M = (-1j * D - sp.diags(cfg.coupling * a)).tocsr()
    return DiscreteOperator(M.astype(complex), g, label=f"Pi_{axis}")


def build_hamiltonian(cfg: FieldConfig, g: Grid2D) -> DiscreteOperator:
    Dx, Dy, lap = derivative_matrices(g)
    ax, ay = _potential_on_grid(cfg, g)
    c = cfg.coupling
    x, y = g.xy
    Ax = sp.diags(ax)
    Ay = sp.diags(ay)
    cross = Ax @ Dx + Dx @ Ax + Ay @ Dy + Dy @ Ay
    diag = 0.5 * c * c * (ax**2 + ay**2) + cfg.scalar_term(x, y)
    H = 0.5 * (-lap) + 0.5j * c * cross + sp.diags(diag)
    H = H.tocsr().astype(complex)
    H.sum_duplicates()
    H.eliminate_zeros()
    return DiscreteOperator(H, g, label=f"H[{cfg.kind.value}]")


TestFunction = Union[np.ndarray, Callable]


def sample(g: Grid2D, psi: TestFunction) -> np.ndarray:
    if callable(psi):
        x, y = g.xy
        return np.asarray(psi(x, y), dtype=complex)
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != g.N:
        raise ValueError(f"test vector has {psi.size} entries, grid has {g.N}")
    return psi


def check_support(g: Grid2D, psi: np.ndarray, margin: int = SUPPORT_MARGIN) -> None:
    inner = g.inner_mask(margin * g.h)
    peak = np.max(np.abs(psi))
    edge = np.max(np.abs(psi[~inner])) if (~inner).any() else 0.0
    if peak == 0 or edge > SUPPORT_RTOL * peak:
        raise BoundaryContamination(
            f"test function reaches within {margin} spacings of the wall "
            f"(edge/peak = {edge / peak if peak else float('inf'):.2e})")


def gaussian(width: float = 1.0, x0: float = 0.0, y0: float = 0.0) -> Callable:
    return lambda x, y: np.exp(-((x - x0) ** 2 + (y - y0) ** 2) / (2 * width**2))


def commutator_residual(cfg: FieldConfig, g: Grid2D, psi: TestFunction) -> float:
    """max-norm of ([Pi_x, Pi_y] - i coupling b_z) psi relative to max|psi|."""
    v = sample(g, psi)
    check_support(g, v)
    px = build_kinematic_momentum(cfg, g, "x").matrix
    py = build_kinematic_momentum(cfg, g, "y").matrix
    x, y = g.xy
    bz = cfg.field_strength_poly(x, y)
    r = px @ (py @ v) - py @ (px @ v) - 1j * cfg.coupling * bz * v
    return float(np.max(np.abs(r)) / np.max(np.abs(v)))


def gauge_covariance_residual(base: FieldConfig, transformed: FieldConfig, chi, g: Grid2D,
                              psi: TestFunction) -> float:
    """|| U H_base U^+ psi - H_transformed psi || / ||psi|| with U = exp(i coupling chi)."""
    v = sample(g, psi)
    check_support(g, v)
    x, y = g.xy
    phase = np.exp(1j * base.coupling * chi(x, y))
    Hb = build_hamiltonian(base, g).matrix
    Ht = build_hamiltonian(transformed, g).matrix
    r = phase * (Hb @ (phase.conj() * v)) - Ht @ v
    return float(np.linalg.norm(r) / np.linalg.norm(v))
