"""Grouping eigenvalues into Landau levels and counting their degeneracy."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import ClusteringAmbiguous, NeedEigenvectors, ZeroField
from ..fields import FieldConfig, Kind
from ..grid import Grid2D
from ..solver import Spectrum

GAP_THRESHOLD = 0.5
BULK_MARGIN = 4.0
BULK_MASS = 0.99


@dataclass(frozen=True)
class LevelCluster:
    nu: int
    members: np.ndarray
    expected: float
    bulk: bool

    @property
    def mean(self) -> float:
        return float(np.mean(self.members))

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def deviation(self) -> float:
        return self.mean - self.expected

    def to_dict(self) -> dict:
        return {"nu": self.nu, "mean": self.mean, "expected": self.expected,
                "deviation": self.deviation, "count": self.count, "bulk": self.bulk,
                "members": [float(v) for v in self.members]}


def level_offset(cfg: FieldConfig) -> float:
    """Zero-point offset of the closed-form spectrum for this configuration.

    (1 + sigma)/2 for the dipole problem, 1/2 for the charged particle.
    """
    if cfg.kind is Kind.FREE or cfg.coupling == 0:
        raise ZeroField("free configuration has no Landau levels")
    if cfg.kind is Kind.STANDARD_LANDAU:
        return 0.5
    return 0.5 * (1 + cfg.sigma)


def probabilities(spectrum: Spectrum) -> np.ndarray:
    if not spectrum.has_vectors:
        raise NeedEigenvectors("probability densities need eigenvectors")
    P = np.abs(spectrum.eigenvectors) ** 2
    return P / P.sum(axis=0)


def bulk_mask(spectrum: Spectrum, grid: Grid2D, margin: float = BULK_MARGIN,
              mass: float = BULK_MASS) -> np.ndarray:
    """True for states with at least ``mass`` of their probability inside [-L+margin, L-margin]^2."""
    inner = grid.inner_mask(margin)
    if not inner.any():
        return np.zeros(len(spectrum), dtype=bool)
    return probabilities(spectrum)[inner].sum(axis=0) >= mass


def cluster_levels(spectrum: Spectrum, sigma: int, window_max_energy: float, *,
                   offset: Optional[float] = None, grid: Optional[Grid2D] = None,
                   bulk_only: bool = True, gap: float = GAP_THRESHOLD) -> list[LevelCluster]:
    """Greedy gap clustering of the eigenvalues below ``window_max_energy``.

    With eigenvectors and a grid, only bulk states enter (edge states of a
    hard-wall box interpolate between levels). Clusters are numbered by rank
    and compared with nu + offset, offset defaulting to (1 + sigma)/2.
    """
    if offset is None:
        offset = 0.5 * (1 + sigma)
    vals = np.asarray(spectrum.eigenvalues)
    use_bulk = bulk_only and grid is not None and spectrum.has_vectors
    keep = vals <= window_max_energy
    if use_bulk:
        keep &= bulk_mask(spectrum, grid)
    vals = np.sort(vals[keep])
    if vals.size == 0:
        return []
    splits = np.nonzero(np.diff(vals) > gap)[0] + 1
    groups = np.split(vals, splits)
    clusters = []
    for nu, members in enumerate(groups):
        mean = members.mean()
        spread = np.max(np.abs(members - mean))
        if spread >= gap:
            raise ClusteringAmbiguous(
                f"cluster {nu} spans {members.min():.4f}..{members.max():.4f}; "
                f"members lie farther than {gap} from the mean",
                diagnostics={"nu": nu, "members": members.tolist(), "mean": float(mean)})
        clusters.append(LevelCluster(nu=nu, members=members, expected=nu + offset, bulk=use_bulk))
    return clusters


def windowed_states(spectrum: Spectrum, center: float, half_width: float = GAP_THRESHOLD) -> np.ndarray:
    """Indices of all eigenvalues in [center - half_width, center + half_width)."""
    v = np.asarray(spectrum.eigenvalues)
    return np.nonzero((v >= center - half_width) & (v < center + half_width))[0]


@dataclass(frozen=True)
class DegeneracyReport:
    predicted: int
    window_count: int
    bulk_count: Optional[float]
    bulk_density: Optional[float]

    @property
    def measured(self) -> float:
        """Bulk-density count when a bulk region exists, else the raw window count."""
        return self.bulk_count if self.bulk_count is not None else float(self.window_count)

    def to_dict(self) -> dict:
        return {"predicted": self.predicted, "measured": self.measured,
                "window_count": self.window_count, "bulk_count": self.bulk_count,
                "bulk_density_times_2pi": None if self.bulk_density is None
                else self.bulk_density * 2 * math.pi}


def predicted_degeneracy(grid: Grid2D, magnetic_length: float = 1.0) -> int:
    return round((2 * grid.L) ** 2 / (2 * math.pi * magnetic_length**2))


def degeneracy_estimate(grid: Grid2D, spectrum: Spectrum, level_energy: float, *,
                        cfg: Optional[FieldConfig] = None, margin: float = BULK_MARGIN) -> DegeneracyReport:
    """Measured and flux-counted number of states in one Landau level.

    ``window_count`` counts every eigenvalue within half a level spacing of
    ``level_energy``; hard-wall edge states pushed above that window make it
    fall short of the flux count by a perimeter term. ``bulk_count`` removes
    the perimeter: the summed probability density of the level's states,
    averaged over the bulk square |x|, |y| <= max(L - margin, L/2), times the
    box area.
    """
    if cfg is not None and (cfg.kind is Kind.FREE or cfg.field_strength_poly.is_zero()):
        raise ZeroField("no degeneracy without an effective field")
    idx = windowed_states(spectrum, level_energy)
    # average over the bulk square, widened to the central half of the box when
    # the walls leave (almost) no bulk
    inner = grid.inner_mask(min(margin, grid.L / 2))
    bulk_count = density = None
    if spectrum.has_vectors and inner.any():
        P = probabilities(spectrum)[:, idx]
        density = float(P[inner].sum(axis=1).mean() / grid.h**2)
        bulk_count = density * (2 * grid.L) ** 2
    return DegeneracyReport(predicted=predicted_degeneracy(grid), window_count=len(idx),
                            bulk_count=bulk_count, bulk_density=density)


def level_means(clusters: Sequence[LevelCluster]) -> list[float]:
    return [c.mean for c in clusters]
