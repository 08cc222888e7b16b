"""Exact bivariate polynomials in x, y.

Coefficients are stored as {(i, j): c} for c * x**i * y**j. Derivatives and
Laplacians are taken on the coefficient table, so curl/divergence checks of
the field configurations are exact up to the final floating evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np


@dataclass(frozen=True)
class Poly2:
    terms: tuple = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[tuple[int, int], float]) -> "Poly2":
        clean = {}
        for (i, j), c in coeffs.items():
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term {(i, j)}")
            c = float(c)
            if c != 0.0:
                clean[(i, j)] = clean.get((i, j), 0.0) + c
        return cls(tuple(sorted((k, v) for k, v in clean.items() if v != 0.0)))

    @classmethod
    def const(cls, c: float) -> "Poly2":
        return cls.from_dict({(0, 0): c})

    @classmethod
    def x(cls, c: float = 1.0) -> "Poly2":
        return cls.from_dict({(1, 0): c})

    @classmethod
    def y(cls, c: float = 1.0) -> "Poly2":
        return cls.from_dict({(0, 1): c})

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Poly2") -> "Poly2":
        out = self.coeffs
        for k, v in other.terms:
            out[k] = out.get(k, 0.0) + v
        return Poly2.from_dict(out)

    def __neg__(self) -> "Poly2":
        return Poly2(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def scale(self, s: float) -> "Poly2":
        return Poly2.from_dict({k: s * v for k, v in self.terms})

    def dx(self) -> "Poly2":
        return Poly2.from_dict({(i - 1, j): i * c for (i, j), c in self.terms if i > 0})

    def dy(self) -> "Poly2":
        return Poly2.from_dict({(i, j - 1): j * c for (i, j), c in self.terms if j > 0})

    def laplacian(self) -> "Poly2":
        return self.dx().dx() + self.dy().dy()

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for (i, j), c in self.terms:
            out = out + c * x**i * y**j
        return out if out.ndim else float(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.terms:
            mono = "*".join(p for p in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
            ) if p)
            parts.append(f"{c:g}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)
