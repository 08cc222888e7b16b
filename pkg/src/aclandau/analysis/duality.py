"""Charge <-> dipole duality: q*Phi <-> mu*lambda/(c^2 eps0).

The charge side is a particle of charge q in flux Phi through area S; the
dipole side is a moment mu next to a line charge density lambda spread over
the same area, so that rho0 = lambda/S.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from ..errors import DegenerateArea
from ..params import PhysicalParams


@dataclass(frozen=True)
class StandardLandauParams:
    q: float
    m: float
    hbar: float
    flux: Optional[float] = None
    area: Optional[float] = None
    field_B: Optional[float] = None
    line_density: Optional[float] = None

    def __post_init__(self):
        if not (self.m > 0 and self.hbar > 0):
            raise ValueError("m and hbar must be positive")
        if self.field_B is None and (self.flux is None or self.area is None):
            raise ValueError("need either B or both flux and area")
        if self.area is not None and self.area == 0:
            raise DegenerateArea("area S = 0")
        if self.field_B is not None and self.flux is not None and self.area is not None:
            if not math.isclose(self.field_B, self.flux / self.area, rel_tol=1e-12):
                raise ValueError("B != Phi/S")

    @property
    def B(self) -> float:
        return self.field_B if self.field_B is not None else self.flux / self.area

    @property
    def omega(self) -> float:
        return self.q * self.B / self.m

    @property
    def length(self) -> float:
        return math.sqrt(self.hbar / abs(self.q * self.B))

    @property
    def sigma(self) -> int:
        return 1 if self.omega > 0 else -1


@dataclass(frozen=True)
class DipoleLandauParams:
    mu: float
    line_density: float
    area: float
    m: float
    hbar: float
    eps0: float
    c: float

    def __post_init__(self):
        if self.area == 0:
            raise DegenerateArea("area S = 0")

    @property
    def rho0(self) -> float:
        return self.line_density / self.area

    def physical(self) -> PhysicalParams:
        return PhysicalParams(m=self.m, mu=self.mu, rho0=self.rho0, eps0=self.eps0, c=self.c, hbar=self.hbar)


def charge_to_dipole(p: StandardLandauParams, mu: float, eps0: float, c: float) -> DipoleLandauParams:
    if p.area is None or p.area == 0:
        raise DegenerateArea("dual map needs a nonzero reference area S")
    if p.flux is None:
        raise ValueError("dual map needs the flux Phi")
    lam = p.q * p.flux * c**2 * eps0 / mu
    return DipoleLandauParams(mu=mu, line_density=lam, area=p.area, m=p.m, hbar=p.hbar, eps0=eps0, c=c)


def dipole_to_charge(d: DipoleLandauParams, q: float) -> StandardLandauParams:
    if d.area == 0:
        raise DegenerateArea("dual map needs a nonzero reference area S")
    flux = d.mu * d.line_density / (d.c**2 * d.eps0 * q)
    return StandardLandauParams(q=q, m=d.m, hbar=d.hbar, flux=flux, area=d.area, line_density=d.line_density)


def duality_map(p: Union[StandardLandauParams, DipoleLandauParams], **counterpart):
    """Dispatch on the side given; ``counterpart`` supplies the other side's constants.

    charge -> dipole needs ``mu, eps0, c``; dipole -> charge needs ``q``.
    """
    if isinstance(p, StandardLandauParams):
        return charge_to_dipole(p, counterpart["mu"], counterpart["eps0"], counterpart["c"])
    if isinstance(p, DipoleLandauParams):
        return dipole_to_charge(p, counterpart["q"])
    raise TypeError(f"cannot dualize {type(p).__name__}")


def level_separation(side: str, p) -> float:
    """Closed-form Landau level spacing in joules (or whatever units p carries)."""
    if side == "charge":
        if p.flux is not None and p.area is not None:
            return p.hbar * abs(p.q * p.flux / p.area) / p.m
        return p.hbar * abs(p.q * p.B) / p.m
    if side == "dipole":
        return p.hbar * abs(p.mu * p.line_density / p.area) / (p.m * p.c**2 * p.eps0)
    raise ValueError(f"side must be 'charge' or 'dipole', got {side!r}")
