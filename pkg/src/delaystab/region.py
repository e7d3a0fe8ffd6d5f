"""Stability region construction in the (h_i, h_d) plane.

For an admissible proportional gain h, every positive root y0 of G carries a
half-plane h_i - h_d*y0^2 {<,>} F1(y0) (direction from the sign of G1'(y0)),
the root at y = 0 carries the case-discipline axis constraint on h_i, and
plants with m = n-1 add the symmetric |h_d| rectangle.  The region is the
convex polygon obtained by clipping a large seed box against all of them.
Consecutive roots are paired into triangles for reporting and termination.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCase, EmptyInterval
from .harmonic import HarmonicContext
from .rootfind import find_roots

DEFAULT_BOUND = 1e3
VERTEX_DEDUP = 1e-9


@dataclass(frozen=True)
class HInterval:
    """Open admissible interval for h; -1 is always one endpoint."""

    lower: float
    upper: float
    kind: str  # "Case1": (-1, h_p); "Case2": (h_n, -1)
    source_extrema: tuple[tuple[float, float], ...] = ()

    def contains(self, h: float) -> bool:
        return self.lower < h < self.upper


@dataclass(frozen=True)
class Constraint:
    """Half-plane h_i - h_d*y0^2 (dir 'lt': <) rhs.  y0 = 0 encodes the axis
    constraint on h_i; kind 'rect' encodes one side of the |h_d| rectangle
    (a*h_i + b*h_d < c with a = 0)."""

    y0: float
    rhs: float
    direction: str  # "lt" | "gt"
    kind: str = "root"  # "root" | "axis" | "rect"

    def halfplane(self) -> tuple[float, float, float]:
        """(a, b, c) with the admissible side a*h_i + b*h_d < c."""
        if self.kind == "rect":
            return 0.0, (1.0 if self.direction == "lt" else -1.0), self.rhs
        a, b, c = 1.0, -self.y0 * self.y0, self.rhs
        if self.direction == "gt":
            a, b, c = -a, -b, -c
        return a, b, c

    def satisfied(self, h_i: float, h_d: float, margin: float = 0.0) -> bool:
        a, b, c = self.halfplane()
        return a * h_i + b * h_d < c - margin


@dataclass(frozen=True)
class RootPair:
    index: int
    y_a: float
    y_b: float
    he_a: float
    he_b: float
    slope_a: float
    slope_b: float


@dataclass
class Triangle:
    pair: RootPair
    V: tuple[float, float]  # (h_i, h_d)
    U: tuple[float, float]
    W: tuple[float, float]
    R: float | None = None  # probe ordinates at h_i = h_i(V1)
    S: float | None = None


@dataclass
class StabilityRegion:
    h: float
    case: str
    constraints: list[Constraint]
    pairs: list[RootPair]
    triangles: list[Triangle]
    hd_bound: float | None
    polygon: np.ndarray  # CCW vertices, shape (k, 2), possibly empty
    y_r2: float
    flags: list[str] = field(default_factory=list)


def admissible_h(ctx: HarmonicContext, case: str) -> HInterval:
    """Condition-1 interval: (-1, h_p) for Case1, (h_n, -1) for Case2, where
    h_p/h_n is the G1 extremum value nearest -1 on the admissible side.
    Only extrema up to the first one beyond y_r1 need be examined."""
    y_r1, extrema = ctx.hm_envelope()
    candidates = []
    for ym, _ in extrema:
        g1 = float(ctx.G1(np.array([ym]))[0])
        _, g1pp = ctx.G1_derivs(np.array([ym]))
        candidates.append((ym, g1, float(g1pp[0])))
    if case == "Case1":
        vals = [(ym, g1) for ym, g1, g1pp in candidates if g1 > -1 and g1pp < 0]
        if not vals:
            raise EmptyInterval("no local maximum of G1 above -1 within the search bound")
        hp = min(g1 for _, g1 in vals)
        return HInterval(-1.0, hp, "Case1", tuple((ym, g1) for ym, g1, _ in candidates))
    vals = [(ym, g1) for ym, g1, g1pp in candidates if g1 < -1 and g1pp > 0]
    if not vals:
        raise EmptyInterval("no local minimum of G1 below -1 within the search bound")
    hn = max(g1 for _, g1 in vals)
    return HInterval(hn, -1.0, "Case2", tuple((ym, g1) for ym, g1, _ in candidates))


def g_roots(ctx: HarmonicContext, h: float, y_max: float) -> np.ndarray:
    """Ordered positive roots of G (solutions of h = G1(y)) in (0, y_max]."""
    return find_roots(lambda y: h - ctx.G1(y), 1e-9, y_max, degenerate_check=True)


def pair_roots(ctx: HarmonicContext, roots: np.ndarray) -> list[RootPair]:
    """Consecutive roots paired in order (1st-2nd, 3rd-4th, ...)."""
    pairs = []
    for k in range(0, len(roots) - 1, 2):
        ya, yb = float(roots[k]), float(roots[k + 1])
        sa = float(ctx.G1_derivs(np.array([ya]))[0][0])
        sb = float(ctx.G1_derivs(np.array([yb]))[0][0])
        pairs.append(
            RootPair(
                index=k // 2 + 1,
                y_a=ya,
                y_b=yb,
                he_a=float(ctx.F1(np.array([ya]))[0]),
                he_b=float(ctx.F1(np.array([yb]))[0]),
                slope_a=sa,
                slope_b=sb,
            )
        )
    return pairs


def build_constraints(
    ctx: HarmonicContext,
    case: str,
    roots: np.ndarray,
    hd_bound: float | None = None,
) -> list[Constraint]:
    """One half-plane per positive root of G, the y=0 axis constraint, and
    the |h_d| rectangle when m = n-1."""
    cons = []
    axis_dir = "gt" if case == "Case1" else "lt"
    cons.append(Constraint(y0=0.0, rhs=0.0, direction=axis_dir, kind="axis"))
    for y0 in roots:
        f1 = float(ctx.F1(np.array([y0]))[0])
        slope = float(ctx.G1_derivs(np.array([y0]))[0][0])
        if abs(slope) < 1e-12:
            raise DegenerateCase(f"zero slope of G1 at root y0={y0}")
        cons.append(Constraint(y0=float(y0), rhs=f1, direction="lt" if slope > 0 else "gt"))
    if hd_bound is not None:
        cons.append(Constraint(y0=0.0, rhs=hd_bound, direction="lt", kind="rect"))
        cons.append(Constraint(y0=0.0, rhs=hd_bound, direction="gt", kind="rect"))
    return cons


def triangle_geometry(pair: RootPair, h: float, hi_V1: float, ctx: HarmonicContext) -> Triangle:
    """Triangle vertices V, U, W and the probe ordinates R, S at h_i = h_i(V1)."""
    ya2, yb2 = pair.y_a**2, pair.y_b**2
    hiV = (yb2 * pair.he_a - ya2 * pair.he_b) / (yb2 - ya2)
    hdV = (-pair.he_b + pair.he_a) / (yb2 - ya2)
    hdU = -pair.he_b / yb2
    hdW = -pair.he_a / ya2
    Pa, Qa = ctx.PQ(np.array([pair.y_a]))
    Pb, Qb = ctx.PQ(np.array([pair.y_b]))
    ra = float(Pa[0] ** 2 + Qa[0] ** 2 - h * h)
    rb = float(Pb[0] ** 2 + Qb[0] ** 2 - h * h)
    R = hi_V1 / yb2 - np.sign(pair.he_b) * np.sqrt(rb) / pair.y_b if rb >= 0 else None
    S = hi_V1 / ya2 - np.sign(pair.he_a) * np.sqrt(ra) / pair.y_a if ra >= 0 else None
    return Triangle(
        pair=pair,
        V=(float(hiV), float(hdV)),
        U=(0.0, float(hdU)),
        W=(0.0, float(hdW)),
        R=float(R) if R is not None else None,
        S=float(S) if S is not None else None,
    )


def termination_bound(ctx: HarmonicContext, h: float, hi_V1: float, y_b1: float, y_max: float) -> float:
    """y_r2 = max(y_b1, largest stationary point of h_d(U_i) and h_d(R_i)
    viewed as functions of a continuous root ordinate y.

    On the root locus the elimination identity gives |h_e| = y*sqrt(P^2+Q^2-h^2),
    so |h_d(U_i)| traces the envelope g(y) = sqrt(P^2+Q^2-h^2)/y and h_d(R_i)
    traces h_i(V1)/y^2 -/+ g(y); beyond the largest stationary point of these
    the triangle ordinates diverge monotonically."""
    step = 1e-6

    def g(y):
        P, Q = ctx.PQ(y)
        rad = P * P + Q * Q - h * h
        with np.errstate(invalid="ignore"):
            return np.sqrt(np.where(rad >= 0, rad, np.nan)) / y

    fns = [g, lambda y: hi_V1 / (y * y) - g(y), lambda y: hi_V1 / (y * y) + g(y)]

    def d(f):
        return lambda y: (f(y + step) - f(y - step)) / (2 * step)

    y_r2 = y_b1
    for fn in fns:
        roots = find_roots(d(fn), 1e-2, y_max)
        if roots.size:
            y_r2 = max(y_r2, float(roots[-1]))
    return y_r2


def clip_halfplane(poly: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon by a*x + b*y <= c."""
    if len(poly) == 0:
        return poly
    out = []
    k = len(poly)
    vals = poly @ np.array([a, b]) - c
    for i in range(k):
        j = (i + 1) % k
        pi, pj = poly[i], poly[j]
        vi, vj = vals[i], vals[j]
        if vi <= 0:
            out.append(pi)
        if (vi < 0 < vj) or (vj < 0 < vi):
            t = vi / (vi - vj)
            out.append(pi + t * (pj - pi))
    if not out:
        return np.zeros((0, 2))
    out = np.array(out)
    # deduplicate consecutive vertices
    keep = [0]
    for i in range(1, len(out)):
        if np.linalg.norm(out[i] - out[keep[-1]]) > VERTEX_DEDUP:
            keep.append(i)
    if len(keep) > 1 and np.linalg.norm(out[keep[-1]] - out[keep[0]]) <= VERTEX_DEDUP:
        keep = keep[:-1]
    return out[keep]


def intersect_region(constraints: list[Constraint], bound: float = DEFAULT_BOUND):
    """(polygon, flags): clip the seed box [-B, B]^2 by every half-plane."""
    poly = np.array([(-bound, -bound), (bound, -bound), (bound, bound), (-bound, bound)])
    for con in constraints:
        a, b, c = con.halfplane()
        poly = clip_halfplane(poly, a, b, c)
        if len(poly) == 0:
            return poly, []
    flags = []
    if np.any(np.abs(poly) >= bound - 1e-6):
        flags.append("Unbounded")
    return poly, flags


def compute_region(
    ctx: HarmonicContext,
    case: str,
    h: float,
    hd_bound: float | None = None,
    bound: float = DEFAULT_BOUND,
) -> StabilityRegion:
    """Full region pipeline for one h: roots, pairing, termination bound,
    constraints, triangles and the final convex polygon."""
    y_max = ctx.y_scan_max
    roots = g_roots(ctx, h, y_max)
    if roots.size == 0:
        cons = build_constraints(ctx, case, roots, hd_bound)
        poly, flags = intersect_region(cons, bound)
        return StabilityRegion(h, case, cons, [], [], hd_bound, poly, y_max, flags + ["NoPositiveRoots"])
    pairs = pair_roots(ctx, roots)
    if not pairs:
        y_b1 = float(roots[-1])
        hi_V1 = 0.0
    else:
        y_b1 = pairs[0].y_b
        t1 = triangle_geometry(pairs[0], h, 0.0, ctx)
        hi_V1 = t1.V[0]
    y_r2 = termination_bound(ctx, h, hi_V1, y_b1, y_max)
    if y_r2 > y_max:
        roots = g_roots(ctx, h, y_r2 * 1.05)
        pairs = pair_roots(ctx, roots)
    # keep roots up to the first b-root beyond y_r2
    kept = []
    for k, y0 in enumerate(roots):
        kept.append(y0)
        if y0 > y_r2 and (k % 2 == 1):
            break
    kept = np.array(kept)
    pairs = pair_roots(ctx, kept)
    triangles = [triangle_geometry(p, h, hi_V1, ctx) for p in pairs]
    cons = build_constraints(ctx, case, kept, hd_bound)
    poly, flags = intersect_region(cons, bound)
    return StabilityRegion(h, case, cons, pairs, triangles, hd_bound, poly, y_r2, flags)


def sweep_h(
    ctx: HarmonicContext,
    case: str,
    interval: HInterval,
    steps: int,
    hd_bound: float | None = None,
    bound: float = DEFAULT_BOUND,
) -> list[tuple[float, StabilityRegion]]:
    """Regions at `steps` equally spaced h values strictly inside the interval."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    hs = [interval.lower + (k + 1) * (interval.upper - interval.lower) / (steps + 1) for k in range(steps)]
    return [(h, compute_region(ctx, case, h, hd_bound, bound)) for h in hs]
