"""PID stabilizability and exact stability regions for time-delay plants."""

from .errors import (
    ContourHitsZero,
    DegenerateCase,
    DelayStabError,
    EmptyInterval,
    EndpointIsRoot,
    ExistenceFail,
    MultipleRootSuspected,
    NoRealBranch,
    OrderViolation,
    PlantValidationError,
    ZeroOnImaginaryAxis,
)
from .estimator import StabilityRegionEstimator
from .harmonic import HarmonicContext
from .plant import (
    ControllerPoint,
    NormalizedPlant,
    PlantSpec,
    denormalize_gains,
    eval_ABCD,
    eval_PQ,
    normalize,
    normalize_gains,
)
from .region import HInterval, StabilityRegion, admissible_h, compute_region, sweep_h
from .stabilizability import StabilizabilityReport, analyze, scan_parameter_plane

__version__ = "0.1.0"

__all__ = [
    "ContourHitsZero",
    "ControllerPoint",
    "DegenerateCase",
    "DelayStabError",
    "EmptyInterval",
    "EndpointIsRoot",
    "ExistenceFail",
    "HarmonicContext",
    "HInterval",
    "MultipleRootSuspected",
    "NoRealBranch",
    "NormalizedPlant",
    "OrderViolation",
    "PlantSpec",
    "PlantValidationError",
    "StabilityRegion",
    "StabilityRegionEstimator",
    "StabilizabilityReport",
    "ZeroOnImaginaryAxis",
    "admissible_h",
    "analyze",
    "compute_region",
    "denormalize_gains",
    "eval_ABCD",
    "eval_PQ",
    "normalize",
    "normalize_gains",
    "scan_parameter_plane",
    "sweep_h",
]
