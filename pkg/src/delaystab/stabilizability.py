"""Stabilizability decision: prerequisite structure, required vs achieved
intersection counts, case discipline and process-parameter zones.

The normative achieved count is a direct grid count of the intersections of
G1(y) with the level -1 (equivalently of tan(y/2) with E(y)); the analytic
split (Ne1 table, base Ne2, Sturm pole count) is carried as advisory data
and a discrepancy raises a diagnostic flag, never a silent choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCase, OrderViolation, PlantValidationError
from .harmonic import HarmonicContext
from .plant import NormalizedPlant, PlantSpec, normalize
from .sturm import pole_count_of_E

CLASSIFY_TOL = 1e-10
COUNT_STEP = np.pi / 400


@dataclass
class StabilizabilityReport:
    principal_term_ok: bool
    principal_term_reason: str
    case: str  # "Case1" (U(n,n)>0) or "Case2" (U(n,n)<0)
    m_p: int
    epsilon: float
    phi1: float
    phi2: float
    pole_count: int
    pole_count_certified: bool
    Ne1: int | None
    required_Ne: dict[int, int] = field(default_factory=dict)
    achieved_Ne: dict[int, int] = field(default_factory=dict)
    hd_bound: float | None = None
    zone_label: str | None = None
    feature_vector: dict[str, int] = field(default_factory=dict)
    verdict: str = "NotStabilizable"
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "principal_term_ok": self.principal_term_ok,
            "principal_term_reason": self.principal_term_reason,
            "case": self.case,
            "m_p": self.m_p,
            "epsilon": self.epsilon,
            "phi1": self.phi1,
            "phi2": self.phi2,
            "pole_count": self.pole_count,
            "pole_count_certified": self.pole_count_certified,
            "Ne1": self.Ne1,
            "required_Ne": {str(k): v for k, v in self.required_Ne.items()},
            "achieved_Ne": {str(k): v for k, v in self.achieved_Ne.items()},
            "hd_bound": self.hd_bound,
            "zone": self.zone_label,
            "feature_vector": self.feature_vector,
            "verdict": self.verdict,
            "flags": self.flags,
        }


def check_principal_term(np_: NormalizedPlant, h_d: float | None = None):
    """(ok, reason, hd_bound): principal-term prerequisite.

    hd_bound is the |h_d| ceiling that applies when m = n-1; None otherwise.
    Raises OrderViolation when m >= n (no principal term at all)."""
    n, m = np_.n, np_.m
    if m >= n:
        raise OrderViolation(f"numerator order m={m} >= denominator order n={n}: no principal term")
    if m < n - 1:
        return True, "m < n-1", None
    bound = abs(np_.U[n] / np_.V[m])
    if h_d is not None and abs(h_d * np_.V[m]) >= abs(np_.U[n]):
        return False, f"|h_d*V(m,m)| >= |U(n,n)| (requires |h_d| < {bound})", bound
    return True, f"m = n-1: requires |h_d| < {bound}", bound


def case_of(np_: NormalizedPlant) -> str:
    Unn = np_.U[np_.n]
    if abs(Unn) < CLASSIFY_TOL:
        raise DegenerateCase("U(n,n) is numerically zero; case undecidable")
    return "Case1" if Unn > 0 else "Case2"


def epsilon_of(np_: NormalizedPlant) -> float:
    """Window offset: 0 when n-m is even, pi/2 when odd."""
    return 0.0 if (np_.n - np_.m) % 2 == 0 else 0.5 * np.pi


def m_p_of(np_: NormalizedPlant) -> int:
    """Plant zeros with positive real part (normalized z_i < 0)."""
    return sum(1 for zi in np_.z if zi < 0)


def required_counts(np_: NormalizedPlant, phi2: float) -> tuple[float, dict]:
    """(epsilon, {r: required N_e}) for window half-widths r in 3..20.

    N_r = 4r + n + 1 - m + 2 m_p; N_e = N_r - 1 when U(n,n)*Phi2 < 0 and
    N_r - 3 when U(n,n)*Phi2 > 0."""
    n, m = np_.n, np_.m
    mp = m_p_of(np_)
    eps = epsilon_of(np_)
    sel = np_.U[n] * phi2
    if abs(sel) < CLASSIFY_TOL:
        raise DegenerateCase("U(n,n)*Phi2 is numerically zero")
    offset = -1 if sel < 0 else -3
    req = {r: 4 * r + n + 1 - m + 2 * mp + offset for r in range(3, 21)}
    return eps, req


def ne1_table(phi1: float, phi2: float) -> int | None:
    """Intersections with |y| < pi from the sign table; None when degenerate."""
    if abs(phi1) < CLASSIFY_TOL or abs(phi2) < CLASSIFY_TOL:
        return None
    if phi2 < 0:
        return 2
    return 0 if phi1 > 0 else 4


def crossing_profile(ctx: HarmonicContext, level: float, edges, y_lo: float = 1e-3):
    """Counts of roots of G1(y) = level in (y_lo, edge] for several edges,
    from a single pi/400 scan up to the largest edge."""
    edges = np.atleast_1d(np.asarray(edges, dtype=float))
    y_hi = float(np.max(edges))
    if y_hi <= y_lo:
        return np.zeros(len(edges), dtype=int)
    npts = max(int(np.ceil((y_hi - y_lo) / COUNT_STEP)) + 1, 2)
    grid = np.linspace(y_lo, y_hi, npts)
    vals = ctx.G1(grid) - level
    s = np.sign(vals)
    nz = s != 0
    idx = np.where(nz, np.arange(npts), 0)
    np.maximum.accumulate(idx, out=idx)  # forward-fill exact-zero signs
    s = s[idx]
    changes = np.concatenate(([0], (s[1:] != s[:-1]).astype(int)))
    cum = np.cumsum(changes)
    pos = np.clip(np.searchsorted(grid, edges, side="right") - 1, 0, npts - 1)
    return cum[pos]


def count_level_crossings(ctx: HarmonicContext, level: float, y_hi: float, y_lo: float = 1e-3) -> int:
    """Grid count of roots of G1(y) = level in (y_lo, y_hi], step pi/400."""
    return int(crossing_profile(ctx, level, [y_hi], y_lo)[0])


def achieved_Ne_window(ctx: HarmonicContext, r: int, epsilon: float) -> int:
    """Direct count of tan/E intersections (i.e. roots of G1 = -1, y != 0)
    in the window [-2r*pi + eps, 2r*pi + eps], using evenness of G1."""
    prof = crossing_profile(ctx, -1.0, [2 * r * np.pi + epsilon, 2 * r * np.pi - epsilon])
    return int(prof[0] + prof[1])


def achieved_counts(
    ctx: HarmonicContext, epsilon: float, r_values: tuple[int, ...] = (3, 4, 5)
) -> dict[int, int]:
    """Achieved N_e per window, with the per-period consistency check.

    The per-period increment must equal 4 over three consecutive windows; if
    not, the windows are widened by 3 periods at a time up to r = 20 before
    giving up as degenerate."""
    base = list(r_values)
    while True:
        edges = [2 * r * np.pi + epsilon for r in base] + [2 * r * np.pi - epsilon for r in base]
        prof = crossing_profile(ctx, -1.0, edges)
        k = len(base)
        counts = {r: int(prof[i] + prof[i + k]) for i, r in enumerate(base)}
        diffs = [counts[b] - counts[a] for a, b in zip(base, base[1:])]
        if all(d == 4 for d in diffs):
            return counts
        base = [r + 3 for r in base]
        if max(base) > 20:
            raise DegenerateCase("per-period intersection count never settles to 4")


def classify_zone(np_: NormalizedPlant, phi1: float, phi2: float) -> tuple[str | None, dict]:
    """Named Z1/Z2/Z3 label (second-order, zero-free plants only) plus the
    generic sign-feature vector."""
    Unn = np_.U[np_.n]
    features = {
        "sign_Unn": int(np.sign(Unn)),
        "sign_phi1": int(np.sign(phi1)) if abs(phi1) > CLASSIFY_TOL else 0,
        "sign_phi2": int(np.sign(phi2)) if abs(phi2) > CLASSIFY_TOL else 0,
    }
    label = None
    if np_.n == 2 and np_.m == 0:
        if Unn > 0 and phi1 > 0 and phi2 > 0:
            label = "Z1"
        elif Unn > 0 and phi1 < 0 and phi2 > 0:
            label = "Z2"
        elif Unn < 0 and phi2 < 0:
            label = "Z3"
    return label, features


def analyze(
    plant: PlantSpec | NormalizedPlant,
    h_d: float | None = None,
    r_values: tuple[int, ...] = (3, 4, 5),
    ctx: HarmonicContext | None = None,
) -> StabilizabilityReport:
    """Full stabilizability decision for a plant."""
    np_ = normalize(plant) if isinstance(plant, PlantSpec) else plant
    if ctx is None:
        ctx = HarmonicContext(np_)
    phi1, phi2 = ctx.phi()
    flags: list[str] = []

    try:
        ok, reason, hd_bound = check_principal_term(np_, h_d)
    except OrderViolation as exc:
        zone, features = classify_zone(np_, phi1, phi2)
        return StabilizabilityReport(
            principal_term_ok=False,
            principal_term_reason=str(exc),
            case="Case1" if np_.U[np_.n] > 0 else "Case2",
            m_p=m_p_of(np_),
            epsilon=epsilon_of(np_),
            phi1=float(phi1),
            phi2=float(phi2),
            pole_count=0,
            pole_count_certified=False,
            Ne1=ne1_table(phi1, phi2),
            zone_label=zone,
            feature_vector=features,
            verdict="NotStabilizable",
            flags=["OrderViolation"],
        )

    case = case_of(np_)
    poles, certified = pole_count_of_E(np_)
    if not certified:
        flags.append("NonCertified")
    ne1 = ne1_table(phi1, phi2)
    zone, features = classify_zone(np_, phi1, phi2)

    report = StabilizabilityReport(
        principal_term_ok=ok,
        principal_term_reason=reason,
        case=case,
        m_p=m_p_of(np_),
        epsilon=epsilon_of(np_),
        phi1=float(phi1),
        phi2=float(phi2),
        pole_count=poles,
        pole_count_certified=certified,
        Ne1=ne1,
        hd_bound=hd_bound,
        zone_label=zone,
        feature_vector=features,
        flags=flags,
    )

    if ne1 is not None:
        ne1_direct = 2 * count_level_crossings(ctx, -1.0, np.pi)
        if ne1_direct != ne1:
            report.flags.append(
                f"Ne1 advisory mismatch: sign table gives {ne1}, direct count {ne1_direct}"
            )

    try:
        eps, required_all = required_counts(np_, phi2)
        achieved = achieved_counts(ctx, eps, r_values)
        report.required_Ne = {r: required_all[r] for r in achieved}
        report.achieved_Ne = achieved
    except DegenerateCase as exc:
        report.verdict = "Degenerate"
        report.flags.append(str(exc))
        return report

    if not ok:
        report.verdict = "NotStabilizable"
        return report
    matched = all(report.achieved_Ne[r] == report.required_Ne[r] for r in report.achieved_Ne)
    report.verdict = "Stabilizable" if matched else "NotStabilizable"
    return report


@dataclass
class ZoneScanResult:
    param1: str
    param2: str
    values1: np.ndarray
    values2: np.ndarray
    rows: list[dict]
    boundaries: dict[str, list[list[tuple[float, float]]]]


def _with_param(plant: PlantSpec, name: str, value: float) -> PlantSpec:
    d = plant.to_dict()
    if name == "L":
        d["delay"] = value
    elif name == "K":
        d["gain"] = value
    elif name.startswith("T"):
        d["time_constants"][int(name[1:]) - 1] = value
    elif name.startswith("Z"):
        d["zero_constants"][int(name[1:]) - 1] = value
    else:
        raise PlantValidationError(f"unknown plant parameter {name!r}")
    return PlantSpec.from_dict(d)


def scan_parameter_plane(
    plant: PlantSpec,
    param1: tuple[str, float, float, int],
    param2: tuple[str, float, float, int],
    r_values: tuple[int, ...] = (3, 4, 5),
    include_ed: bool = False,
) -> ZoneScanResult:
    """Grid of verdicts over two plant parameters plus classifier boundary
    polylines (phi1, phi2, tangency defect, pole-count changes)."""
    n1, lo1, hi1, k1 = param1
    n2, lo2, hi2, k2 = param2
    v1 = np.linspace(lo1, hi1, k1)
    v2 = np.linspace(lo2, hi2, k2)
    rows = []
    phi1_f = np.full((k1, k2), np.nan)
    phi2_f = np.full((k1, k2), np.nan)
    ed_f = np.full((k1, k2), np.nan)
    pole_f = np.full((k1, k2), np.nan)
    for i, a in enumerate(v1):
        for j, b in enumerate(v2):
            try:
                p = _with_param(_with_param(plant, n1, a), n2, b)
                rep = analyze(p, r_values=r_values)
            except (PlantValidationError, DegenerateCase):
                rows.append(
                    {"param1": a, "param2": b, "verdict": "Degenerate", "zone": None,
                     "phi1": np.nan, "phi2": np.nan, "poles": -1,
                     "Ne_required": -1, "Ne_achieved": -1}
                )
                continue
            r0 = r_values[0]
            rows.append(
                {
                    "param1": a,
                    "param2": b,
                    "verdict": rep.verdict,
                    # A sign-test zone label is only a candidate; the counts
                    # confirm it, so unconfirmed cells stay unlabeled.
                    "zone": rep.zone_label if rep.verdict == "Stabilizable" else None,
                    "phi1": rep.phi1,
                    "phi2": rep.phi2,
                    "poles": rep.pole_count,
                    "Ne_required": rep.required_Ne.get(r0, -1),
                    "Ne_achieved": rep.achieved_Ne.get(r0, -1),
                }
            )
            phi1_f[i, j] = rep.phi1
            phi2_f[i, j] = rep.phi2
            pole_f[i, j] = rep.pole_count
            if include_ed:
                try:
                    pts = HarmonicContext(normalize(p)).tangency_points()
                    ed_f[i, j] = pts[0][1] if pts else np.nan
                except Exception:
                    ed_f[i, j] = np.nan
    boundaries = {
        "phi1": _zero_contours(v1, v2, phi1_f),
        "phi2": _zero_contours(v1, v2, phi2_f),
        "Ed": _zero_contours(v1, v2, ed_f),
        "pole_count": _jump_contours(v1, v2, pole_f),
    }
    return ZoneScanResult(n1, n2, v1, v2, rows, boundaries)


def _zero_contours(v1, v2, field_vals) -> list[list[tuple[float, float]]]:
    """Zero-crossing segments by edge interpolation (marching-squares lite)."""
    segs = []
    k1, k2 = field_vals.shape
    for i in range(k1 - 1):
        for j in range(k2 - 1):
            pts = []
            corners = [
                (v1[i], v2[j], field_vals[i, j]),
                (v1[i + 1], v2[j], field_vals[i + 1, j]),
                (v1[i + 1], v2[j + 1], field_vals[i + 1, j + 1]),
                (v1[i], v2[j + 1], field_vals[i, j + 1]),
            ]
            for (x0, y0, f0), (x1, y1, f1) in zip(corners, corners[1:] + corners[:1]):
                if np.isfinite(f0) and np.isfinite(f1) and f0 * f1 < 0:
                    u = f0 / (f0 - f1)
                    pts.append((x0 + u * (x1 - x0), y0 + u * (y1 - y0)))
            if len(pts) >= 2:
                segs.append(pts[:2])
    return segs


def _jump_contours(v1, v2, field_vals) -> list[list[tuple[float, float]]]:
    """Cell-edge midlines where an integer-valued field changes."""
    segs = []
    k1, k2 = field_vals.shape
    for i in range(k1 - 1):
        for j in range(k2):
            if np.isfinite(field_vals[i, j]) and np.isfinite(field_vals[i + 1, j]):
                if field_vals[i, j] != field_vals[i + 1, j]:
                    x = 0.5 * (v1[i] + v1[i + 1])
                    dy = (v2[1] - v2[0]) / 2 if k2 > 1 else 0.5
                    segs.append([(x, v2[j] - dy), (x, v2[j] + dy)])
    for i in range(k1):
        for j in range(k2 - 1):
            if np.isfinite(field_vals[i, j]) and np.isfinite(field_vals[i, j + 1]):
                if field_vals[i, j] != field_vals[i, j + 1]:
                    y = 0.5 * (v2[j] + v2[j + 1])
                    dx = (v1[1] - v1[0]) / 2 if k1 > 1 else 0.5
                    segs.append([(v1[i] - dx, y), (v1[i] + dx, y)])
    return segs
