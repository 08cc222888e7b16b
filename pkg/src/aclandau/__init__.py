"""Landau quantization of a neutral magnetic dipole in an electric field (Aharonov-Casher setting)."""
from .fields import FieldConfig, GaugeFunction, Kind, free, gauge_transform, plate, standard_landau, symmetric
from .grid import Grid2D
from .params import DerivedUnits, PhysicalParams, SimulationScales, derive_units, nondimensionalize
from .solver import Spectrum, solve_lowest

__version__ = "0.1.0"
