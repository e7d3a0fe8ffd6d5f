"""Scikit-learn style front end.

StabilityRegionEstimator.fit(plant) runs the full decision + region
pipeline; predict classifies (h_i, h_d) points against the fitted region
(+1 stable, -1 unstable, 0 marginal).  Composes with sklearn tooling via
BaseEstimator (get_params/set_params/clone)."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import region as rg
from .harmonic import HarmonicContext
from .plant import PlantSpec, normalize
from .stabilizability import analyze

MARGINAL_TOL = 1e-9


class StabilityRegionEstimator(BaseEstimator):
    """Fits the PID stability region of a time-delay plant.

    Parameters
    ----------
    h : float or None
        Proportional gain (dimensionless, K*Kp).  None picks the midpoint
        of the admissible interval.
    bound : float
        Half-width of the clipping seed box in the (h_i, h_d) plane.
    scan_max : float or None
        Override for the root-scan ceiling.
    """

    def __init__(self, h: float | None = None, bound: float = 1e3, scan_max: float | None = None):
        self.h = h
        self.bound = bound
        self.scan_max = scan_max

    def fit(self, plant, y=None):
        if isinstance(plant, dict):
            plant = PlantSpec.from_dict(plant)
        if not isinstance(plant, PlantSpec):
            raise TypeError("fit expects a PlantSpec or a plant dict")
        self.plant_ = plant
        self.report_ = analyze(plant)
        self.ctx_ = HarmonicContext(normalize(plant), y_scan_max=self.scan_max)
        self.interval_ = None
        self.region_ = None
        if self.report_.verdict == "Stabilizable":
            self.interval_ = rg.admissible_h(self.ctx_, self.report_.case)
            h = self.h if self.h is not None else 0.5 * (self.interval_.lower + self.interval_.upper)
            if not self.interval_.contains(h):
                raise ValueError(
                    f"h={h} outside admissible interval "
                    f"({self.interval_.lower}, {self.interval_.upper})"
                )
            self.h_ = h
            self.region_ = rg.compute_region(
                self.ctx_, self.report_.case, h, hd_bound=self.report_.hd_bound, bound=self.bound
            )
        return self

    def predict(self, X):
        """+1 for points strictly inside the region, -1 outside, 0 marginal."""
        if not hasattr(self, "report_"):
            raise NotFittedError("call fit first")
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.full(len(X), -1, dtype=int)
        if self.region_ is None:
            return out
        for k, (hi, hd) in enumerate(X):
            worst = -np.inf
            for con in self.region_.constraints:
                a, b, c = con.halfplane()
                worst = max(worst, a * hi + b * hd - c)
            if worst < -MARGINAL_TOL:
                out[k] = 1
            elif abs(worst) <= MARGINAL_TOL:
                out[k] = 0
        return out
