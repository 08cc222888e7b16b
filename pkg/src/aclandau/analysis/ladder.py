"""Ladder-operator and orbit-center checks on computed eigenvectors."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..discrete import build_hamiltonian, build_kinematic_momentum
from ..errors import NeedEigenvectors
from ..fields import FieldConfig, Kind
from ..grid import Grid2D
from ..solver import Spectrum
from .levels import GAP_THRESHOLD, bulk_mask, level_offset, windowed_states


def lowering_operator(cfg: FieldConfig, grid: Grid2D, sigma: Optional[int] = None):
    """Discrete (Pi_x + i sigma Pi_y) / sqrt(2) in simulation units."""
    sigma = cfg.sigma if sigma is None else sigma
    px = build_kinematic_momentum(cfg, grid, "x").matrix
    py = build_kinematic_momentum(cfg, grid, "y").matrix
    return ((px + 1j * sigma * py) / math.sqrt(2)).tocsr()


@dataclass(frozen=True)
class LadderBlock:
    nu: int
    singular_values: np.ndarray
    expected: float
    same_level_leakage: float
    outside_leakage: float
    n_bra: int
    n_ket: int

    @property
    def max_relative_error(self) -> float:
        if self.singular_values.size == 0:
            return math.inf
        return float(np.max(np.abs(self.singular_values / self.expected - 1)))

    def to_dict(self) -> dict:
        return {"nu": self.nu, "expected": self.expected,
                "singular_values": [float(s) for s in self.singular_values],
                "max_relative_error": self.max_relative_error,
                "same_level_leakage": self.same_level_leakage,
                "outside_leakage": self.outside_leakage,
                "n_bra": self.n_bra, "n_ket": self.n_ket}


@dataclass(frozen=True)
class LadderReport:
    blocks: list
    annihilation_norms: np.ndarray
    sigma: int
    notes: list = field(default_factory=list)

    @property
    def max_annihilation(self) -> float:
        return float(np.max(self.annihilation_norms)) if self.annihilation_norms.size else math.nan

    def to_dict(self) -> dict:
        return {"sigma": self.sigma, "blocks": [b.to_dict() for b in self.blocks],
                "annihilation_norms": [float(v) for v in self.annihilation_norms],
                "max_annihilation": self.max_annihilation, "notes": list(self.notes)}


def ladder_check(spectrum: Spectrum, cfg: FieldConfig, grid: Grid2D, sigma: Optional[int] = None,
                 levels: Sequence[int] = (0, 1)) -> LadderReport:
    """Matrix elements of the lowering operator between adjacent levels.

    Kets are the bulk states of level nu+1; bras are all states within half a
    spacing of level nu, so images that spread slightly past the bulk window
    are still captured. Singular values of the block should be sqrt(nu+1).
    """
    if not spectrum.has_vectors:
        raise NeedEigenvectors("ladder_check needs eigenvectors")
    sigma = cfg.sigma if sigma is None else sigma
    offset = level_offset(cfg)
    A = lowering_operator(cfg, grid, sigma)
    V = spectrum.eigenvectors
    bulk = bulk_mask(spectrum, grid)
    blocks = []
    notes = []
    for nu in levels:
        bra = windowed_states(spectrum, nu + offset, GAP_THRESHOLD)
        same = windowed_states(spectrum, nu + 1 + offset, GAP_THRESHOLD)
        ket = np.intersect1d(same, np.nonzero(bulk)[0])
        if ket.size == 0 or bra.size == 0:
            notes.append(f"level {nu}->{nu + 1}: no bulk states to test")
            continue
        AK = A @ V[:, ket]
        M = V[:, bra].conj().T @ AK
        sv = np.linalg.svd(M, compute_uv=False)
        S = V[:, same].conj().T @ AK
        outside = AK - V[:, bra] @ M
        blocks.append(LadderBlock(
            nu=nu, singular_values=sv[: ket.size], expected=math.sqrt(nu + 1),
            same_level_leakage=float(np.linalg.norm(S, 2)),
            outside_leakage=float(np.max(np.linalg.norm(outside, axis=0))),
            n_bra=int(bra.size), n_ket=int(ket.size)))
    ground = np.intersect1d(windowed_states(spectrum, offset, GAP_THRESHOLD), np.nonzero(bulk)[0])
    ann = np.linalg.norm(A @ V[:, ground], axis=0) if ground.size else np.array([])
    return LadderReport(blocks=blocks, annihilation_norms=ann, sigma=sigma, notes=notes)


@dataclass(frozen=True)
class OrbitCenterReport:
    residuals_x: np.ndarray
    residuals_y: np.ndarray
    h: float
    skipped: bool = False
    note: str = ""

    @property
    def rms(self) -> float:
        if self.skipped or self.residuals_x.size == 0:
            return math.nan
        return float(np.sqrt(np.mean(self.residuals_x**2 + self.residuals_y**2)))

    def to_dict(self) -> dict:
        return {"h": self.h, "skipped": self.skipped, "note": self.note, "rms": self.rms,
                "residuals_x": [float(v) for v in self.residuals_x],
                "residuals_y": [float(v) for v in self.residuals_y]}


def orbit_center_operators(cfg: FieldConfig, grid: Grid2D, sigma: Optional[int] = None):
    """X0 = x + sigma Pi_y and Y0 = y - sigma Pi_x.

    With [Pi_x, Pi_y] = i sigma these commute with Pi^2 in the continuum.
    """
    import scipy.sparse as sp

    sigma = cfg.sigma if sigma is None else sigma
    x, y = grid.xy
    px = build_kinematic_momentum(cfg, grid, "x").matrix
    py = build_kinematic_momentum(cfg, grid, "y").matrix
    X0 = (sp.diags(x.astype(complex)) + sigma * py).tocsr()
    Y0 = (sp.diags(y.astype(complex)) - sigma * px).tocsr()
    return X0, Y0


def orbit_center_check(spectrum: Spectrum, cfg: FieldConfig, grid: Grid2D,
                       sigma: Optional[int] = None, states: Optional[Sequence[int]] = None) -> OrbitCenterReport:
    """||[H, X0] psi|| and ||[H, Y0] psi|| per state (default: bulk states of the lowest level)."""
    if cfg.kind is Kind.FREE or cfg.coupling == 0:
        return OrbitCenterReport(np.array([]), np.array([]), grid.h, skipped=True,
                                 note="ZeroField: no orbit center without a field")
    if not spectrum.has_vectors:
        raise NeedEigenvectors("orbit_center_check needs eigenvectors")
    if states is None:
        ground = windowed_states(spectrum, level_offset(cfg), GAP_THRESHOLD)
        states = np.intersect1d(ground, np.nonzero(bulk_mask(spectrum, grid))[0])
    states = np.asarray(states, dtype=int)
    H = build_hamiltonian(cfg, grid).matrix
    X0, Y0 = orbit_center_operators(cfg, grid, sigma)
    V = spectrum.eigenvectors[:, states]
    HV = H @ V
    rx = np.linalg.norm(H @ (X0 @ V) - X0 @ HV, axis=0)
    ry = np.linalg.norm(H @ (Y0 @ V) - Y0 @ HV, axis=0)
    return OrbitCenterReport(rx, ry, grid.h)
