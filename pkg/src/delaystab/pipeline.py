"""Request-level operations shared by the CLI and the HTTP service.

Every function takes plain dicts/values and returns a JSON-ready dict, so
both front ends emit byte-identical payloads for identical requests.
"""

from __future__ import annotations

import numpy as np

from . import region as rg
from .errors import (
    ContourHitsZero,
    DegenerateCase,
    EmptyInterval,
    PlantValidationError,
)
from .harmonic import HarmonicContext
from .oracle import ContourSpec, count_rhp_zeros
from .plant import ControllerPoint, PlantSpec, normalize
from .serialize import SCHEMA_VERSION, jsonable, region_to_dict, report_to_dict, zones_to_dict
from .stabilizability import analyze, scan_parameter_plane


class PrerequisiteFailure(Exception):
    """Plant or request does not meet the prerequisites of the operation.

    Carries the stabilizability report (and optional extras) for the
    diagnostic payload."""

    def __init__(self, message: str, report: dict | None = None, extra: dict | None = None):
        super().__init__(message)
        self.report = report
        self.extra = extra or {}


def _plant(plant_dict: dict) -> PlantSpec:
    if not isinstance(plant_dict, dict):
        raise PlantValidationError("plant must be a JSON object")
    return PlantSpec.from_dict(plant_dict)


def run_check(plant_dict: dict, h_d: float | None = None) -> dict:
    plant = _plant(plant_dict)
    report = analyze(plant, h_d=h_d)
    return {"schema_version": SCHEMA_VERSION, "report": report_to_dict(report)}


def _region_context(plant: PlantSpec):
    report = analyze(plant)
    if report.verdict != "Stabilizable":
        raise PrerequisiteFailure(
            f"plant is not stabilizable (verdict {report.verdict})", report_to_dict(report)
        )
    ctx = HarmonicContext(normalize(plant))
    try:
        interval = rg.admissible_h(ctx, report.case)
    except EmptyInterval as exc:
        raise PrerequisiteFailure(
            f"StabilizableButNotRealized: {exc}", report_to_dict(report)
        ) from exc
    return report, ctx, interval


def run_region(plant_dict: dict, h: float) -> dict:
    plant = _plant(plant_dict)
    report, ctx, interval = _region_context(plant)
    if not interval.contains(h):
        raise PrerequisiteFailure(
            f"h={h} outside the admissible open interval ({interval.lower}, {interval.upper})",
            report_to_dict(report),
            extra={"interval": [jsonable(interval.lower), jsonable(interval.upper)]},
        )
    region = rg.compute_region(ctx, report.case, h, hd_bound=report.hd_bound)
    out = region_to_dict(region)
    out["schema_version"] = SCHEMA_VERSION
    out["interval"] = [jsonable(interval.lower), jsonable(interval.upper)]
    return out


def run_sweep(plant_dict: dict, steps: int) -> dict:
    plant = _plant(plant_dict)
    report, ctx, interval = _region_context(plant)
    slices = rg.sweep_h(ctx, report.case, interval, steps, hd_bound=report.hd_bound)
    return {
        "schema_version": SCHEMA_VERSION,
        "interval": [jsonable(interval.lower), jsonable(interval.upper)],
        "slices": [region_to_dict(reg) for _, reg in slices],
    }


def run_verify(
    plant_dict: dict,
    h: float,
    h_i: float,
    h_d: float,
    x_max: float = 30.0,
    y_max: float = 40.0 * np.pi,
) -> dict:
    plant = _plant(plant_dict)
    contour = ContourSpec(x_max=x_max, y_max=y_max)
    point = ControllerPoint(h=h, h_i=h_i, h_d=h_d)
    contour_dict = {
        "x_max": contour.x_max,
        "y_max": contour.y_max,
        "samples_per_unit": contour.samples_per_unit,
    }
    try:
        count = count_rhp_zeros(plant, point, contour)
    except ContourHitsZero:
        return jsonable(
            {
                "schema_version": SCHEMA_VERSION,
                "rhp_zeros": None,
                "contour": contour_dict,
                "certified": False,
                "marginal": True,
            }
        )
    return jsonable(
        {
            "schema_version": SCHEMA_VERSION,
            "rhp_zeros": count,
            "contour": contour_dict,
            "certified": True,
            "marginal": False,
        }
    )


def parse_grid(spec: str) -> list[tuple[str, float, float, int]]:
    """'T1:-3:3:60,T2:-3:3:60' -> [("T1", -3.0, 3.0, 60), ...]."""
    out = []
    for part in spec.split(","):
        fields = part.split(":")
        if len(fields) != 4:
            raise PlantValidationError(f"bad grid spec segment {part!r}")
        name, lo, hi, k = fields
        out.append((name, float(lo), float(hi), int(k)))
    if len(out) != 2:
        raise PlantValidationError("grid spec must name exactly two parameters")
    return out


def run_zones(plant_dict: dict, grid: str) -> dict:
    plant = _plant(plant_dict)
    p1, p2 = parse_grid(grid)
    scan = scan_parameter_plane(plant, p1, p2, include_ed=True)
    out = zones_to_dict(scan)
    out["schema_version"] = SCHEMA_VERSION
    return out


def verdict_exit_code(report_dict: dict) -> int:
    v = report_dict["report"]["verdict"]
    return {"Stabilizable": 0, "NotStabilizable": 2, "Degenerate": 3}.get(v, 3)
