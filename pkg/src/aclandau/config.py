"""Run configuration: flat ``key = value`` text or JSON.

Recognised keys::

    kind     symmetric | plate | gauge-transformed | standard-landau | free
    sigma    +1 or -1 (sign of the coupling)
    L        half-extent of the box, in magnetic lengths
    n        points per axis (odd); or give h and n is derived
    k        eigenpairs to compute (default: enough for ``levels`` levels)
    tol      eigen-residual tolerance
    method   auto | dense | lanczos | chebyshev
    levels   number of Landau levels in the analysis window
    window   explicit window top energy (overrides levels)
    seed     start-vector seed
    max_iter iteration cap for the iterative solvers
    out      output directory
    formats  comma list of json, csv
    base     base kind of a gauge-transformed config (symmetric | plate)
    target   comparison kind for gauge-check (default plate)
    hs       comma list of grid spacings for convergence studies
    chi.i.j  coefficient of x^i y^j in the gauge function
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .fields import MAX_GAUGE_DEGREE, GaugeFunction
from .pipeline import KINDS
from .solver import METHODS


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    kind: str = "symmetric"
    sigma: int = -1
    L: float = 8.0
    n: int = 129
    k: Optional[int] = None
    tol: float = 1e-8
    method: str = "auto"
    levels: int = 3
    window: Optional[float] = None
    seed: int = 0
    max_iter: Optional[int] = None
    out: str = "out"
    formats: tuple = ("json", "csv")
    base: str = "plate"
    target: str = "plate"
    hs: tuple = (0.25, 0.125, 0.0625)
    chi: tuple = ()  # ((i, j), c) pairs

    @property
    def h(self) -> float:
        return 2 * self.L / (self.n - 1)

    @property
    def gauge(self) -> GaugeFunction:
        return GaugeFunction.from_coeffs(dict(self.chi))

    def validate(self) -> "RunConfig":
        problems = []
        if self.kind not in KINDS:
            problems.append(f"kind must be one of {KINDS}")
        if self.sigma not in (1, -1):
            problems.append("sigma must be +1 or -1")
        if not self.L > 0:
            problems.append("L must be positive")
        if self.n < 3 or self.n % 2 == 0:
            problems.append("n must be an odd integer >= 3")
        if self.k is not None and not 1 <= self.k <= max(self.n - 2, 1) ** 2:
            problems.append("k must be between 1 and (n-2)^2, the number of unknowns")
        if not self.tol > 0:
            problems.append("tol must be positive")
        if self.method not in METHODS:
            problems.append(f"method must be one of {METHODS}")
        if self.levels < 1:
            problems.append("levels must be >= 1")
        if self.window is not None and not self.window > 0:
            problems.append("window must be positive")
        if self.max_iter is not None and self.max_iter < 1:
            problems.append("max_iter must be >= 1")
        if self.seed < 0:
            problems.append("seed must be >= 0")
        if not set(self.formats) <= {"json", "csv"} or not self.formats:
            problems.append("formats must be a non-empty subset of json,csv")
        if self.base not in ("symmetric", "plate"):
            problems.append("base must be symmetric or plate")
        if self.target not in ("symmetric", "plate", "gauge-transformed"):
            problems.append("target must be symmetric, plate or gauge-transformed")
        if len(self.hs) < 1 or any(not h > 0 for h in self.hs):
            problems.append("hs must be positive spacings")
        for (i, j), _ in self.chi:
            if i < 0 or j < 0 or i + j > MAX_GAUGE_DEGREE:
                problems.append(f"chi term x^{i} y^{j} outside degree {MAX_GAUGE_DEGREE}")
        if problems:
            raise ValidationError("; ".join(problems))
        return self

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["formats"] = list(self.formats)
        d["hs"] = list(self.hs)
        d["chi"] = {f"{i}.{j}": c for (i, j), c in self.chi}
        d["h"] = self.h
        return d


_INT = {"sigma", "n", "k", "levels", "seed", "max_iter"}
_FLOAT = {"L", "tol", "window", "h"}
_STR = {"kind", "method", "out", "base", "target"}


def _coerce(key: str, value):
    try:
        if key in _INT:
            if isinstance(value, str):
                value = value.strip()
                f = float(value)
            else:
                f = float(value)
            if f != int(f):
                raise ValueError
            return int(f)
        if key in _FLOAT:
            return float(value)
        if key in _STR:
            return str(value).strip()
        if key == "formats":
            items = value.split(",") if isinstance(value, str) else value
            return tuple(s.strip() for s in items if str(s).strip())
        if key == "hs":
            items = value.split(",") if isinstance(value, str) else value
            return tuple(float(s) for s in items)
    except (TypeError, ValueError):
        raise ValidationError(f"bad value for {key}: {value!r}") from None
    raise ValidationError(f"unknown key {key!r}")


def from_mapping(items: dict, base: Optional[RunConfig] = None) -> RunConfig:
    """Build a config from string or JSON values; ``h`` is turned into ``n``."""
    values = {}
    chi = dict(base.chi) if base else {}
    h = None
    for key, value in items.items():
        if value is None:
            continue
        if key.startswith("chi."):
            parts = key.split(".")
            try:
                i, j = int(parts[1]), int(parts[2])
                chi[(i, j)] = float(value)
            except (IndexError, ValueError):
                raise ValidationError(f"bad gauge coefficient {key} = {value!r}") from None
            continue
        if key == "chi" and isinstance(value, dict):
            for kk, vv in value.items():
                i, j = (int(s) for s in str(kk).split("."))
                chi[(i, j)] = float(vv)
            continue
        v = _coerce(key, value)
        if key == "h":
            h = v
        else:
            values[key] = v
    cfg = dataclasses.replace(base or RunConfig(), **values)
    if h is not None:
        n = round(2 * cfg.L / h) + 1
        if abs((n - 1) * h - 2 * cfg.L) > 1e-9 * cfg.L:
            raise ValidationError(f"h = {h} does not divide 2L = {2 * cfg.L}")
        cfg = dataclasses.replace(cfg, n=n)
    cfg = dataclasses.replace(cfg, chi=tuple(sorted((k, v) for k, v in chi.items() if v != 0.0)))
    return cfg


def parse_text(text: str) -> dict:
    items = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        items[key] = value
    return items


def load(path, base: Optional[RunConfig] = None) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from None
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: {exc}") from None
    else:
        items = parse_text(text)
    return from_mapping(items, base)
