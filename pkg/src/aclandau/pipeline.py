"""Field -> operator -> spectrum -> analysis runs shared by the CLI and tests."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import fields
from .analysis.convergence import fit_order
from .analysis.levels import LevelCluster, cluster_levels, level_offset
from .discrete import build_hamiltonian, commutator_residual, gaussian
from .errors import ClusteringAmbiguous
from .fields import FieldConfig, GaugeFunction, Kind
from .grid import Grid2D
from .solver import DEFAULT_TOL, Spectrum, solve_lowest

KINDS = ("symmetric", "plate", "gauge-transformed", "standard-landau", "free")


def make_config(kind: str, sigma: int = -1, chi: Optional[GaugeFunction] = None,
                base: str = "plate") -> FieldConfig:
    if kind == "symmetric":
        return fields.symmetric(sigma)
    if kind == "plate":
        return fields.plate(sigma)
    if kind == "standard-landau":
        return fields.standard_landau(sigma)
    if kind == "free":
        return fields.free()
    if kind == "gauge-transformed":
        if base not in ("symmetric", "plate"):
            raise ValueError(f"gauge-transformed base must be symmetric or plate, got {base!r}")
        return fields.gauge_transform(make_config(base, sigma), chi or GaugeFunction())
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


def states_for_levels(grid: Grid2D, levels: int) -> int:
    """Eigenpairs needed so that ``levels`` Landau levels sit below the top one.

    Flux counting gives (2L)^2/2pi states per level; edge states below the
    window are fewer than the bulk states lost to the walls, so this is enough.
    """
    per_level = (2 * grid.L) ** 2 / (2 * math.pi)
    return min(grid.N, max(8, math.ceil(levels * per_level)))


@dataclass
class SpectrumRun:
    cfg: FieldConfig
    grid: Grid2D
    spectrum: Spectrum
    offset: Optional[float]
    window_max: Optional[float]
    clusters: list

    @property
    def means(self) -> list:
        return [c.mean for c in self.clusters]

    @property
    def window_covered(self) -> bool:
        return self.window_max is None or self.spectrum.eigenvalues[-1] >= self.window_max


def run_spectrum(cfg: FieldConfig, grid: Grid2D, *, levels: int = 3, k: Optional[int] = None,
                 tol: float = DEFAULT_TOL, method: str = "auto", seed: int = 0,
                 want_vectors: bool = True, max_iter: Optional[int] = None) -> SpectrumRun:
    H = build_hamiltonian(cfg, grid)
    if k is None:
        k = states_for_levels(grid, levels)
    spec = solve_lowest(H, k, tol=tol, method=method, seed=seed, want_vectors=want_vectors,
                        max_iter=max_iter)
    if cfg.kind is Kind.FREE:
        return SpectrumRun(cfg, grid, spec, None, None, [])
    offset = level_offset(cfg)
    window = offset + levels - 0.5
    clusters = cluster_levels(spec, cfg.sigma, window, offset=offset, grid=grid)
    return SpectrumRun(cfg, grid, spec, offset, window, clusters)


def box_levels(L: float, count: int) -> np.ndarray:
    """Exact Dirichlet levels (pi^2/2D^2)(nx^2 + ny^2) of the box of side D = 2L."""
    D = 2 * L
    m = int(math.ceil(math.sqrt(2 * count))) + 2
    nx, ny = np.meshgrid(np.arange(1, m + 1), np.arange(1, m + 1))
    vals = np.sort((np.pi**2 / (2 * D**2) * (nx**2 + ny**2)).ravel())
    return vals[:count]


def box_levels_discrete(L: float, n: int, count: int) -> np.ndarray:
    """Exact eigenvalues of the five-point Dirichlet Laplacian / 2 on the same grid."""
    h = 2 * L / (n - 1)
    j = np.arange(1, n - 1)
    lam = (2 - 2 * np.cos(np.pi * j / (n - 1))) / h**2
    return np.sort(np.add.outer(lam, lam).ravel() / 2)[:count]


def ground_energy(cfg: FieldConfig, grid: Grid2D, *, k: int = 4, tol: float = DEFAULT_TOL,
                  method: str = "auto", seed: int = 0) -> float:
    spec = solve_lowest(build_hamiltonian(cfg, grid), k, tol=tol, method=method, seed=seed,
                        want_vectors=False)
    return float(spec.eigenvalues[0])


def gauge_gap(base: FieldConfig, other: FieldConfig, grid: Grid2D, *, k: int = 4,
              tol: float = DEFAULT_TOL, method: str = "auto") -> float:
    """Ground-energy difference between two gauge-equivalent configurations on one grid.

    The two continuum operators are unitarily equivalent on the same box,
    so their discrete ground energies differ only by discretization error.
    """
    return abs(ground_energy(base, grid, k=k, tol=tol, method=method)
               - ground_energy(other, grid, k=k, tol=tol, method=method))


def refine(L: float, hs) -> list[Grid2D]:
    return [Grid2D.from_spacing(L, h) for h in hs]


def commutator_study(cfg: FieldConfig, L: float, hs, width: float = 1.0):
    errs = [commutator_residual(cfg, g, gaussian(width)) for g in refine(L, hs)]
    return fit_order(hs, errs)


def ground_energy_study(cfg: FieldConfig, L: float, hs, **kw):
    exact = level_offset(cfg)
    errs = [ground_energy(cfg, g, **kw) - exact for g in refine(L, hs)]
    return fit_order(hs, errs)


def gauge_gap_study(base: FieldConfig, other: FieldConfig, L: float, hs, **kw):
    errs = [gauge_gap(base, other, g, **kw) for g in refine(L, hs)]
    return fit_order(hs, errs)


def free_box_study(L: float, hs, **kw):
    exact = box_levels(L, 1)[0]
    errs = [ground_energy(fields.free(), g, **kw) - exact for g in refine(L, hs)]
    return fit_order(hs, errs)
