from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OrderFit:
    h: tuple
    errors: tuple
    slope: float
    intercept: float
    r2: float
    monotone: bool

    def to_dict(self) -> dict:
        return {"h": list(self.h), "errors": list(self.errors), "slope": self.slope,
                "intercept": self.intercept, "r2": self.r2, "monotone": self.monotone}


def fit_order(h, errors) -> OrderFit:
    """Least-squares slope of log|error| against log h."""
    h = np.asarray(h, dtype=float)
    e = np.abs(np.asarray(errors, dtype=float))
    if h.size < 2 or h.size != e.size:
        raise ValueError("need matching h and error sequences of length >= 2")
    if np.any(e <= 0):
        raise ValueError("errors must be nonzero to fit an order")
    lx, ly = np.log(h), np.log(e)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    order = np.argsort(h)
    monotone = bool(np.all(np.diff(e[order]) > 0))
    return OrderFit(tuple(h.tolist()), tuple(e.tolist()), float(slope), float(intercept), r2, monotone)
