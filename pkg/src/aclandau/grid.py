from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class Grid2D:
    """Uniform grid on [-L, L]^2 with ``n`` nodes per axis (n odd), spacing 2L/(n-1).

    The outermost nodes lie on the Dirichlet walls at +-L, where the wave
    function vanishes, so the unknowns are the ``m = n - 2`` interior nodes per
    axis. ``axis``, ``xy`` and ``N`` refer to those unknowns. Flattened index
    is ``i * m + j`` with ``i`` the x index, ``j`` the y index.
    """

    L: float
    n: int

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError(f"half-extent must be positive, got {self.L!r}")
        if int(self.n) != self.n or self.n < 3 or self.n % 2 == 0:
            raise ValueError(f"points per axis must be an odd integer >= 3, got {self.n!r}")

    @classmethod
    def from_spacing(cls, L: float, h: float) -> "Grid2D":
        n = round(2 * L / h) + 1
        if abs((n - 1) * h - 2 * L) > 1e-9 * L:
            raise ValueError(f"spacing {h} does not divide 2L = {2 * L}")
        return cls(L, n)

    @property
    def h(self) -> float:
        return 2 * self.L / (self.n - 1)

    @property
    def m(self) -> int:
        """Unknowns per axis."""
        return self.n - 2

    @property
    def N(self) -> int:
        return self.m * self.m

    @cached_property
    def axis(self) -> np.ndarray:
        return np.linspace(-self.L, self.L, self.n)[1:-1]

    @cached_property
    def xy(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened x and y coordinates of every grid point."""
        X, Y = np.meshgrid(self.axis, self.axis, indexing="ij")
        return X.ravel(), Y.ravel()

    def index(self, i: int, j: int) -> int:
        if not (0 <= i < self.m and 0 <= j < self.m):
            raise IndexError((i, j))
        return i * self.m + j

    def unindex(self, k: int) -> tuple[int, int]:
        return divmod(k, self.m)

    def index_of_point(self, x: float, y: float) -> int:
        i = round((x + self.L) / self.h) - 1
        j = round((y + self.L) / self.h) - 1
        return self.index(i, j)

    def inner_mask(self, margin: float) -> np.ndarray:
        """Points with both |x| and |y| at most L - margin."""
        x, y = self.xy
        lim = self.L - margin + 1e-12
        return (np.abs(x) <= lim) & (np.abs(y) <= lim)

    def describe(self) -> dict:
        return {"L": self.L, "n": self.n, "h": self.h, "unknowns_per_axis": self.m, "N": self.N}
