"""Electric-field / dipole configurations and their effective vector potentials.

All quantities are dimensionless (simulation units). With the dipole along z
the AC vector potential is the in-plane rotation of the field,
``a = (-E_y, E_x)``, and the effective field strength is ``b_z = div E``.
The coupling constant carries the revolution sign, so geometric potentials
returned here are unsigned.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .errors import NotHarmonic, UnsupportedKind
from .grid import Grid2D
from .poly import Poly2

DIPOLE_AXIS = (0.0, 0.0, 1.0)
DEFAULT_TOL = 1e-12
MAX_GAUGE_DEGREE = 4


class Kind(enum.Enum):
    SYMMETRIC = "symmetric"
    PLATE = "plate"
    GAUGE_TRANSFORMED = "gauge-transformed"
    STANDARD_LANDAU = "standard-landau"
    FREE = "free"
    CUSTOM = "custom"


AC_KINDS = (Kind.SYMMETRIC, Kind.PLATE, Kind.GAUGE_TRANSFORMED, Kind.CUSTOM)


@dataclass(frozen=True)
class GaugeFunction:
    """Polynomial gauge function chi(x, y) of degree at most 4."""

    poly: Poly2 = field(default_factory=Poly2)

    def __post_init__(self):
        if self.poly.degree > MAX_GAUGE_DEGREE:
            raise ValueError(f"gauge function degree {self.poly.degree} exceeds {MAX_GAUGE_DEGREE}")

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[tuple[int, int], float]) -> "GaugeFunction":
        return cls(Poly2.from_dict(coeffs))

    @property
    def is_harmonic(self) -> bool:
        return self.poly.laplacian().is_zero()

    def __add__(self, other: "GaugeFunction") -> "GaugeFunction":
        return GaugeFunction(self.poly + other.poly)

    def __call__(self, x, y):
        return self.poly(x, y)

    def gradient(self) -> tuple[Poly2, Poly2]:
        return self.poly.dx(), self.poly.dy()


@dataclass(frozen=True)
class FieldConfig:
    kind: Kind
    coupling: float
    ax: Poly2
    ay: Poly2
    ex: Optional[Poly2] = None
    ey: Optional[Poly2] = None
    base_kind: Optional[Kind] = None
    gauge: Optional[GaugeFunction] = None

    @property
    def is_ac(self) -> bool:
        return self.kind in AC_KINDS

    @property
    def sigma(self) -> int:
        """Revolution sign carried by the coupling (0 for the free particle)."""
        return int(np.sign(self.coupling))

    @property
    def dipole_axis(self) -> tuple[float, float, float]:
        return DIPOLE_AXIS

    @property
    def field_strength_poly(self) -> Poly2:
        return self.ay.dx() - self.ax.dy()

    @property
    def scalar_poly(self) -> Poly2:
        """Dimensionless mu*hbar/(2mc^2) div E term; zero without a dipole field."""
        if not self.is_ac:
            return Poly2()
        return (self.ex.dx() + self.ey.dy()).scale(0.5 * self.coupling)

    def scalar_term(self, x, y):
        return self.scalar_poly(x, y) + np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape)

    def describe(self) -> dict:
        d = {
            "kind": self.kind.value,
            "coupling": self.coupling,
            "a_x": str(self.ax),
            "a_y": str(self.ay),
        }
        if self.is_ac:
            d["E_x"] = str(self.ex)
            d["E_y"] = str(self.ey)
        if self.base_kind is not None:
            d["base_kind"] = self.base_kind.value
            d["chi"] = str(self.gauge.poly)
        return d


def _from_field(kind: Kind, ex: Poly2, ey: Poly2, coupling: float, **extra) -> FieldConfig:
    return FieldConfig(kind=kind, coupling=float(coupling), ax=-ey, ay=ex, ex=ex, ey=ey, **extra)


def _check_sigma(sigma):
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma!r}")


def symmetric(sigma: int) -> FieldConfig:
    """Uniformly charged cylinder along z: E = (x, y)/2."""
    _check_sigma(sigma)
    return _from_field(Kind.SYMMETRIC, Poly2.x(0.5), Poly2.y(0.5), sigma)


def plate(sigma: int) -> FieldConfig:
    """Uniformly charged plate normal to x: E = (x, 0)."""
    _check_sigma(sigma)
    return _from_field(Kind.PLATE, Poly2.x(1.0), Poly2(), sigma)


def custom(ex: Poly2, ey: Poly2, coupling: float) -> FieldConfig:
    """Arbitrary polynomial in-plane field; used to probe the condition checks."""
    return _from_field(Kind.CUSTOM, ex, ey, coupling)


def standard_landau(sign: int) -> FieldConfig:
    """Charged particle in a uniform magnetic field, symmetric gauge, no scalar term."""
    _check_sigma(sign)
    return FieldConfig(kind=Kind.STANDARD_LANDAU, coupling=float(sign), ax=Poly2.y(-0.5), ay=Poly2.x(0.5))


def free() -> FieldConfig:
    return FieldConfig(kind=Kind.FREE, coupling=0.0, ax=Poly2(), ay=Poly2())


def _require_ac(cfg: FieldConfig, what: str):
    if not cfg.is_ac:
        raise UnsupportedKind(f"{what} needs an electric-field configuration, got {cfg.kind.value}")


def evaluate_field(cfg: FieldConfig, point):
    _require_ac(cfg, "evaluate_field")
    x, y = point
    return cfg.ex(x, y), cfg.ey(x, y)


def vector_potential(cfg: FieldConfig, point):
    x, y = point
    return cfg.ax(x, y), cfg.ay(x, y)


def field_strength(cfg: FieldConfig, point):
    x, y = point
    return cfg.field_strength_poly(x, y)


def divergence_E(cfg: FieldConfig, point):
    _require_ac(cfg, "divergence_E")
    x, y = point
    return (cfg.ex.dx() + cfg.ey.dy())(x, y)


def curl_E(cfg: FieldConfig, point):
    _require_ac(cfg, "curl_E")
    x, y = point
    return (cfg.ey.dx() - cfg.ex.dy())(x, y)


def gauge_transform(cfg: FieldConfig, chi: GaugeFunction) -> FieldConfig:
    """Shift E by the rotated gradient of a harmonic chi, i.e. a -> a + grad chi."""
    _require_ac(cfg, "gauge_transform")
    if not chi.is_harmonic:
        raise NotHarmonic(f"laplacian of chi = {chi.poly.laplacian()} is not zero")
    if chi.poly.is_zero():
        return cfg
    ex = cfg.ex + chi.poly.dy()
    ey = cfg.ey - chi.poly.dx()
    if cfg.kind is Kind.GAUGE_TRANSFORMED:
        base, total = cfg.base_kind, cfg.gauge + chi
    else:
        base, total = cfg.kind, chi
    return _from_field(Kind.GAUGE_TRANSFORMED, ex, ey, cfg.coupling, base_kind=base, gauge=total)


@dataclass(frozen=True)
class ConditionReport:
    max_curl_E: float
    max_bz_deviation: float
    bz_mean: float
    max_Ez: float
    planar: bool
    condition_i: bool
    condition_ii: bool
    condition_iii: bool
    tolerances: dict
    grid: dict
    notes: tuple = ()

    @property
    def all_ok(self) -> bool:
        return self.condition_i and self.condition_ii and self.condition_iii

    def to_dict(self) -> dict:
        return {
            "max_curl_E": self.max_curl_E,
            "max_bz_deviation": self.max_bz_deviation,
            "bz_mean": self.bz_mean,
            "max_Ez": self.max_Ez,
            "planar": self.planar,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "tolerances": dict(self.tolerances),
            "grid": dict(self.grid),
            "notes": list(self.notes),
        }


def check_landau_conditions(cfg: FieldConfig, probe: Grid2D, tol: float = DEFAULT_TOL,
                            tolerances: Optional[dict] = None) -> ConditionReport:
    """Evaluate the three Landau conditions on every probe point.

    (i) is checked in its planar form: dipole along z, E_z = 0, motion in the
    x-y plane. Fields are stored with two in-plane components only, so E_z is
    identically zero for every configuration built here.
    """
    tols = {"curl": tol, "uniformity": tol, "Ez": tol}
    if tolerances:
        tols.update(tolerances)
    x, y = probe.xy
    notes = []
    if cfg.is_ac:
        curl = np.max(np.abs(curl_E(cfg, (x, y))))
    else:
        curl = 0.0
        notes.append("no electric field: condition (ii) holds vacuously")
    bz = np.broadcast_to(field_strength(cfg, (x, y)), x.shape)
    bz_mean = float(np.mean(bz))
    dev = float(np.max(np.abs(bz - bz_mean)))
    ez = 0.0
    planar = cfg.dipole_axis == DIPOLE_AXIS
    if cfg.field_strength_poly.is_zero():
        notes.append("degenerate (zero field)")
    return ConditionReport(
        max_curl_E=float(curl),
        max_bz_deviation=dev,
        bz_mean=bz_mean,
        max_Ez=ez,
        planar=planar,
        condition_i=planar and ez <= tols["Ez"],
        condition_ii=float(curl) <= tols["curl"],
        condition_iii=dev <= tols["uniformity"],
        tolerances=tols,
        grid=probe.describe(),
        notes=tuple(notes),
    )
