"""Shared fixtures: the second-order worked example and random plant draws."""

import numpy as np
import pytest

from delaystab.harmonic import HarmonicContext
from delaystab.plant import PlantSpec, normalize


@pytest.fixture(scope="session")
def worked_plant() -> PlantSpec:
    """Second-order delay plant with t = (0.6, 0.8), no zeros."""
    return PlantSpec(gain=1.0, delay=1.0, time_constants=(0.6, 0.8))


@pytest.fixture(scope="session")
def worked_np(worked_plant):
    return normalize(worked_plant)


@pytest.fixture(scope="session")
def worked_ctx(worked_np):
    return HarmonicContext(worked_np)


def random_plant(rng: np.random.Generator, n_max: int = 4) -> PlantSpec:
    """Plant with n <= n_max stable poles and m <= n-1 stable zeros, scaled
    so the dimensionless constants stay in a well-conditioned range."""
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(0, n))
    t = rng.uniform(0.2, 2.0, size=n)
    z = rng.uniform(0.05, 0.5, size=m)
    return PlantSpec(gain=1.0, delay=1.0, time_constants=tuple(t), zero_constants=tuple(z))
