"""Command line interface.

Exit codes: 0 stabilizable / successful artifact, 1 malformed input,
2 not stabilizable or prerequisite failure, 3 degenerate.
"""

from __future__ import annotations

import json
import sys

import click

from . import pipeline
from .errors import DegenerateCase, DelayStabError, PlantValidationError
from .region import StabilityRegion
from .serialize import region_to_csv, region_to_svg, zones_to_csv


def _load_plant(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: cannot read plant file: {exc}", err=True)
        sys.exit(1)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fail(exc: Exception, code: int):
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


@click.group()
def main():
    """Stabilizability and PID stability regions for time-delay plants.

    CSV outputs: `region --format csv` emits columns h_i,h_d (polygon
    vertices in order); `zones --format csv` emits
    param1,param2,verdict,zone,phi1,phi2,poles,Ne_required,Ne_achieved.
    The environment variable DELAYSTAB_SCAN_MAX overrides the root-scan
    ceiling (dimensionless frequency)."""


@main.command()
@click.option("--plant", "plant_file", required=True, type=click.Path())
@click.option("--hd", "h_d", type=float, default=None, help="Derivative gain for the m=n-1 bound check.")
@click.option("--out", type=click.Path(), default=None)
def check(plant_file, h_d, out):
    """Stabilizability report (exit 0 stabilizable / 2 not / 3 degenerate)."""
    plant = _load_plant(plant_file)
    try:
        result = pipeline.run_check(plant, h_d=h_d)
    except PlantValidationError as exc:
        _fail(exc, 1)
    except DegenerateCase as exc:
        _fail(exc, 3)
    _emit(json.dumps(result, indent=2) + "\n", out)
    sys.exit(pipeline.verdict_exit_code(result))


@main.command()
@click.option("--plant", "plant_file", required=True, type=click.Path())
@click.option("--h", required=True, type=float)
@click.option("--out", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "svg"]), default="json")
def region(plant_file, h, out, fmt):
    """Stability region in the (h_i, h_d) plane for a given h."""
    plant = _load_plant(plant_file)
    try:
        result = pipeline.run_region(plant, h)
    except PlantValidationError as exc:
        _fail(exc, 1)
    except pipeline.PrerequisiteFailure as exc:
        _fail(exc, 2)
    except DegenerateCase as exc:
        _fail(exc, 3)
    if fmt == "json":
        _emit(json.dumps(result, indent=2) + "\n", out)
    else:
        # rebuild the geometric object for the csv/svg emitters
        from .harmonic import HarmonicContext
        from .plant import PlantSpec, normalize
        from . import region as rg
        from .stabilizability import analyze

        p = PlantSpec.from_dict(plant)
        rep = analyze(p)
        ctx = HarmonicContext(normalize(p))
        reg = rg.compute_region(ctx, rep.case, h, hd_bound=rep.hd_bound)
        _emit(region_to_csv(reg) if fmt == "csv" else region_to_svg(reg), out)
    sys.exit(0)


@main.command()
@click.option("--plant", "plant_file", required=True, type=click.Path())
@click.option("--grid", required=True, help="P1:min:max:steps,P2:min:max:steps")
@click.option("--out", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
def zones(plant_file, grid, out, fmt):
    """Verdict grid over two plant parameters with boundary polylines."""
    plant = _load_plant(plant_file)
    try:
        if fmt == "csv":
            from .plant import PlantSpec
            from .stabilizability import scan_parameter_plane

            p1, p2 = pipeline.parse_grid(grid)
            scan = scan_parameter_plane(PlantSpec.from_dict(plant), p1, p2, include_ed=True)
            _emit(zones_to_csv(scan), out)
        else:
            result = pipeline.run_zones(plant, grid)
            _emit(json.dumps(result, indent=2) + "\n", out)
    except PlantValidationError as exc:
        _fail(exc, 1)
    sys.exit(0)


@main.command()
@click.option("--plant", "plant_file", required=True, type=click.Path())
@click.option("--steps", type=int, default=5)
@click.option("--out", type=click.Path(), default=None)
def sweep(plant_file, steps, out):
    """Regions at equally spaced h values inside the admissible interval."""
    plant = _load_plant(plant_file)
    try:
        result = pipeline.run_sweep(plant, steps)
    except PlantValidationError as exc:
        _fail(exc, 1)
    except pipeline.PrerequisiteFailure as exc:
        _fail(exc, 2)
    except DegenerateCase as exc:
        _fail(exc, 3)
    _emit(json.dumps(result, indent=2) + "\n", out)
    sys.exit(0)


@main.command()
@click.option("--plant", "plant_file", required=True, type=click.Path())
@click.option("--h", required=True, type=float)
@click.option("--hi", "h_i", required=True, type=float)
@click.option("--hd", "h_d", required=True, type=float)
@click.option("--x-max", type=float, default=30.0)
@click.option("--out", type=click.Path(), default=None)
def verify(plant_file, h, h_i, h_d, x_max, out):
    """Count right-half-plane zeros for one controller point (oracle)."""
    plant = _load_plant(plant_file)
    try:
        result = pipeline.run_verify(plant, h, h_i, h_d, x_max=x_max)
    except PlantValidationError as exc:
        _fail(exc, 1)
    except DelayStabError as exc:
        _fail(exc, 3)
    _emit(json.dumps(result, indent=2) + "\n", out)
    sys.exit(0)


if __name__ == "__main__":
    main()
