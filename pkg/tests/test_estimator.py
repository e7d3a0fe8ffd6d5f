"""Estimator front end: fit/predict, parameter handling, sklearn composition."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from delaystab import StabilityRegionEstimator
from delaystab.plant import PlantSpec


class TestFit:
    def test_fit_sets_artifacts(self, worked_plant):
        est = StabilityRegionEstimator(h=0.5).fit(worked_plant)
        assert est.report_.verdict == "Stabilizable"
        assert est.interval_.contains(0.5)
        assert len(est.region_.polygon) == 3

    def test_fit_accepts_plant_dict(self, worked_plant):
        est = StabilityRegionEstimator(h=0.5).fit(worked_plant.to_dict())
        assert est.h_ == 0.5

    def test_default_h_is_interval_midpoint(self, worked_plant):
        est = StabilityRegionEstimator().fit(worked_plant)
        assert est.h_ == pytest.approx(0.5 * (est.interval_.lower + est.interval_.upper))

    def test_h_outside_interval_rejected(self, worked_plant):
        with pytest.raises(ValueError):
            StabilityRegionEstimator(h=3.0).fit(worked_plant)

    def test_not_stabilizable_plant_has_no_region(self):
        p = PlantSpec(gain=1, delay=1, time_constants=(1.0,), zero_constants=(0.3,))
        est = StabilityRegionEstimator().fit(p)
        assert est.region_ is None
        assert np.all(est.predict([[1.0, 0.5]]) == -1)

    def test_rejects_wrong_type(self):
        with pytest.raises(TypeError):
            StabilityRegionEstimator().fit(42)


class TestPredict:
    def test_inside_outside_marginal(self, worked_plant):
        est = StabilityRegionEstimator(h=0.5).fit(worked_plant)
        labels = est.predict([[1.0, 0.5], [5.0, 0.0], [0.0, 0.0]])
        assert labels[0] == 1
        assert labels[1] == -1
        assert labels[2] == 0  # on the h_i > 0 axis boundary

    def test_unfitted_raises(self):
        with pytest.raises(NotFittedError):
            StabilityRegionEstimator().predict([[0.0, 0.0]])

    def test_predict_agrees_with_zero_counter(self, worked_plant):
        from delaystab.oracle import count_rhp_zeros
        from delaystab.plant import ControllerPoint

        est = StabilityRegionEstimator(h=0.5).fit(worked_plant)
        rng = np.random.default_rng(31)
        pts = rng.uniform(-2.0, 4.0, size=(15, 2))
        labels = est.predict(pts)
        for (hi, hd), lab in zip(pts, labels):
            if lab == 0:
                continue
            count = count_rhp_zeros(worked_plant, ControllerPoint(h=0.5, h_i=hi, h_d=hd))
            assert (count == 0) == (lab == 1)


class TestSklearnProtocol:
    def test_get_params_and_clone(self):
        est = StabilityRegionEstimator(h=0.7, bound=500.0)
        params = est.get_params()
        assert params["h"] == 0.7 and params["bound"] == 500.0
        twin = clone(est)
        assert twin.get_params() == params

    def test_set_params(self):
        est = StabilityRegionEstimator()
        est.set_params(h=0.3)
        assert est.h == 0.3
