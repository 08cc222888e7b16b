"""Dimensional parameters of the dipole problem and the simulation unit system.

Simulation units: hbar = m = 1, lengths in l_AC, energies in hbar*|omega_AC|.
Everything downstream of this module works in those units; SI values only
appear at the CLI boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateCoupling


@dataclass(frozen=True)
class PhysicalParams:
    """SI inputs: mass, magnetic moment, volume charge density, eps0, c, hbar.

    ``mu`` and ``rho0`` are signed; their product fixes the revolution sign.
    """

    m: float
    mu: float
    rho0: float
    eps0: float
    c: float
    hbar: float

    def __post_init__(self):
        for name in ("m", "eps0", "c", "hbar"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        for name in ("mu", "rho0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def is_free(self) -> bool:
        return self.mu * self.rho0 == 0.0


@dataclass(frozen=True)
class DerivedUnits:
    omega: float  # rad/s, signed
    sigma: int
    length: float  # l_AC in metres
    energy: float  # hbar*|omega| in joules

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")


def derive_units(p: PhysicalParams) -> DerivedUnits:
    """Cyclotron frequency, revolution sign and magnetic length of the AC problem."""
    coupling = p.mu * p.rho0
    if coupling == 0.0:
        raise DegenerateCoupling("mu*rho0 = 0; use the free configuration")
    omega = coupling / (p.m * p.c**2 * p.eps0)
    sigma = 1 if omega > 0 else -1
    length = math.sqrt(p.hbar * p.c**2 * p.eps0 / abs(coupling))
    return DerivedUnits(omega=omega, sigma=sigma, length=length, energy=p.hbar * abs(omega))


@dataclass(frozen=True)
class SimulationScales:
    """Conversion between SI and simulation units for one parameter set.

    ``sigma`` is stored, not recomputed, so a flipped-sign study changes a
    single value.
    """

    length: float
    energy: float
    sigma: int

    def to_joules(self, e):
        return e * self.energy

    def from_joules(self, e_si):
        return e_si / self.energy

    def to_metres(self, x):
        return x * self.length

    def from_metres(self, x_si):
        return x_si / self.length

    @property
    def commutator(self) -> complex:
        """[Pi_x, Pi_y] in simulation units."""
        return 1j * self.sigma

    @property
    def scalar_term(self) -> float:
        """Dimensionless mu*hbar/(2 m c^2) div E, i.e. half of sigma."""
        return 0.5 * self.sigma

    def level(self, nu: int) -> float:
        """Closed-form AC level in units of hbar*|omega|."""
        return nu + 0.5 * (1 + self.sigma)


def nondimensionalize(p: PhysicalParams) -> SimulationScales:
    u = derive_units(p)
    return SimulationScales(length=u.length, energy=u.energy, sigma=u.sigma)
