"""Output shaping: significant-digit rounding, JSON/CSV/SVG emitters.

All numeric JSON output is rounded to 12 significant digits so golden files
stay stable across platforms; SVG emission is fully deterministic.
"""

from __future__ import annotations

import io

import numpy as np

from .region import StabilityRegion
from .stabilizability import StabilizabilityReport, ZoneScanResult

SCHEMA_VERSION = "1"


def round_sig(x: float, digits: int = 12) -> float:
    if x == 0 or not np.isfinite(x):
        return float(x)
    return float(f"{x:.{digits}g}")


def jsonable(obj):
    """Recursively convert numpy scalars/arrays and round floats."""
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        return round_sig(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def region_to_dict(region: StabilityRegion) -> dict:
    cons = [
        {"y0": c.y0, "rhs": c.rhs, "dir": c.direction}
        for c in region.constraints
        if c.kind in ("root", "axis")
    ]
    tris = [{"V": list(t.V), "U": list(t.U), "W": list(t.W)} for t in region.triangles]
    flags = list(region.flags)
    if region.hd_bound is not None:
        flags.append(f"hd_bound={round_sig(region.hd_bound)}")
    return jsonable(
        {
            "h": region.h,
            "case": region.case,
            "constraints": cons,
            "triangles": tris,
            "polygon": [list(v) for v in region.polygon],
            "flags": flags,
        }
    )


def report_to_dict(report: StabilizabilityReport) -> dict:
    return jsonable(report.to_dict())


def region_to_csv(region: StabilityRegion) -> str:
    buf = io.StringIO()
    buf.write("h_i,h_d\n")
    for hi, hd in region.polygon:
        buf.write(f"{round_sig(float(hi))},{round_sig(float(hd))}\n")
    return buf.getvalue()


ZONE_CSV_HEADER = "param1,param2,verdict,zone,phi1,phi2,poles,Ne_required,Ne_achieved"


def zones_to_csv(scan: ZoneScanResult) -> str:
    buf = io.StringIO()
    buf.write(ZONE_CSV_HEADER + "\n")
    for row in scan.rows:
        zone = row["zone"] if row["zone"] else ""
        buf.write(
            f"{round_sig(row['param1'])},{round_sig(row['param2'])},{row['verdict']},{zone},"
            f"{round_sig(row['phi1'])},{round_sig(row['phi2'])},{row['poles']},"
            f"{row['Ne_required']},{row['Ne_achieved']}\n"
        )
    return buf.getvalue()


def zones_to_dict(scan: ZoneScanResult) -> dict:
    return jsonable(
        {
            "param1": scan.param1,
            "param2": scan.param2,
            "rows": scan.rows,
            "boundaries": {
                k: [[list(p) for p in seg] for seg in v] for k, v in scan.boundaries.items()
            },
        }
    )


def _svg_path(points, close=False) -> str:
    cmds = []
    for k, (x, y) in enumerate(points):
        cmds.append(f"{'M' if k == 0 else 'L'} {round_sig(float(x))} {round_sig(float(-y))}")
    if close:
        cmds.append("Z")
    return " ".join(cmds)


def region_to_svg(region: StabilityRegion, size: int = 640) -> str:
    """Deterministic SVG: triangles, the final polygon and U/V/W labels.
    The h_d axis points up (y negated in path coordinates)."""
    pts = [v for t in region.triangles for v in (t.V, t.U, t.W)]
    pts += [tuple(v) for v in region.polygon]
    if not pts:
        pts = [(-1.0, -1.0), (1.0, 1.0)]
    xs = [p[0] for p in pts]
    ys = [-p[1] for p in pts]
    pad_x = 0.1 * max(max(xs) - min(xs), 1e-6)
    pad_y = 0.1 * max(max(ys) - min(ys), 1e-6)
    vb = (
        round_sig(min(xs) - pad_x),
        round_sig(min(ys) - pad_y),
        round_sig(max(xs) - min(xs) + 2 * pad_x),
        round_sig(max(ys) - min(ys) + 2 * pad_y),
    )
    stroke = round_sig(max(vb[2], vb[3]) / 300.0)
    font = round_sig(max(vb[2], vb[3]) / 40.0)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{vb[0]} {vb[1]} {vb[2]} {vb[3]}">',
    ]
    for t in region.triangles:
        lines.append(
            f'<path d="{_svg_path([t.V, t.U, t.W], close=True)}" fill="none" '
            f'stroke="#888888" stroke-width="{stroke}"/>'
        )
    if len(region.polygon) >= 3:
        lines.append(
            f'<path d="{_svg_path(region.polygon, close=True)}" fill="#88cc88" '
            f'fill-opacity="0.5" stroke="#226622" stroke-width="{stroke}"/>'
        )
    for t in region.triangles:
        i = t.pair.index
        for name, (x, y) in (("V", t.V), ("U", t.U), ("W", t.W)):
            lines.append(
                f'<text x="{round_sig(float(x))}" y="{round_sig(float(-y))}" '
                f'font-size="{font}">{name}{i}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
