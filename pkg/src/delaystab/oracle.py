"""Independent ground truth by the argument principle and dense grids.

Counts right-half-plane zeros of the characteristic function H(sigma) as the
winding number of H along a rectangle boundary (phase accumulated increment
by increment, never through a single log), compensated for the plant-zero
poles with positive real part.  Also dense-grid counters for roots of G and
for tan/E intersections, used as oracles everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ContourHitsZero, DegenerateCase
from .harmonic import HarmonicContext, _tan_segments
from .plant import ControllerPoint, NormalizedPlant, PlantSpec, normalize
from .sturm import e_pole_polynomial

GRID_STEP = np.pi / 400
WINDING_RESIDUAL = 0.05


@dataclass(frozen=True)
class ContourSpec:
    x_max: float = 30.0
    y_max: float = 40.0 * np.pi
    samples_per_unit: int = 50

    def __post_init__(self):
        if self.x_max <= 0 or self.y_max <= 0 or self.samples_per_unit < 50:
            raise ValueError("contour requires x_max > 0, y_max > 0, samples_per_unit >= 50")


def _rectangle_points(x_max: float, y_max: float, per_unit: int) -> np.ndarray:
    """Closed CCW rectangle boundary 0..x_max, -y_max..y_max in the sigma plane."""
    def seg(z0, z1, even=False):
        k = max(int(np.ceil(abs(z1 - z0) * per_unit)), 2)
        if even and k % 2:
            k += 1
        return z0 + (z1 - z0) * np.linspace(0.0, 1.0, k, endpoint=False)

    c = [0 - 1j * y_max, x_max - 1j * y_max, x_max + 1j * y_max, 0 + 1j * y_max]
    # even sample count on the left edge so that sigma = 0 is hit exactly
    pts = np.concatenate([seg(c[0], c[1]), seg(c[1], c[2]), seg(c[2], c[3]), seg(c[3], c[0], even=True)])
    return np.append(pts, pts[0])


def _winding_number(vals: np.ndarray) -> float:
    """Total phase change / 2*pi along a closed sampled curve."""
    dphi = np.angle(vals[1:] / vals[:-1])
    return float(np.sum(dphi) / (2 * np.pi))


def count_rhp_zeros(
    plant: PlantSpec | NormalizedPlant,
    point: ControllerPoint,
    contour: ContourSpec = ContourSpec(),
    ctx: HarmonicContext | None = None,
) -> int:
    """Zeros of H with real part in (0, x_max) and |imag| < y_max.

    The rectangle is perturbed (y_max + pi/7) up to three times when H comes
    too close to zero on the boundary; the winding number must land within
    5% of an integer, otherwise the contour is resampled at 4x density."""
    np_ = normalize(plant) if isinstance(plant, PlantSpec) else plant
    if ctx is None:
        ctx = HarmonicContext(np_)
    y_max = contour.y_max
    for attempt in range(3):
        pts = _rectangle_points(contour.x_max, y_max, contour.samples_per_unit)
        t1, t2 = ctx.H_parts(point, pts)
        vals = t1 + t2
        scale = np.abs(t1) + np.abs(t2) + 1.0
        if np.min(np.abs(vals) / scale) > 1e-9:
            break
        y_max += np.pi / 7
    else:
        raise ContourHitsZero("H vanishes on the counting contour after 3 perturbations")
    per_unit = contour.samples_per_unit
    for _ in range(4):
        w = _winding_number(vals)
        if abs(w - round(w)) < WINDING_RESIDUAL:
            break
        per_unit *= 4
        pts = _rectangle_points(contour.x_max, y_max, per_unit)
        vals = ctx.H_complex(point, pts)
    else:
        raise ContourHitsZero("winding number did not converge to an integer")
    winding = int(round(w))
    # poles of H at sigma = -1/z_i with z_i < 0 lie on the positive real axis
    poles_inside = sum(1 for zi in np_.z if zi < 0 and 0 < -1.0 / zi < contour.x_max)
    return winding + poles_inside


def grid_count_G_roots(ctx: HarmonicContext, h: float, y_lo: float, y_hi: float) -> int:
    """Roots of G in (y_lo, y_hi] with y_lo >= 0, by sign-change counting of
    h - G1 on a pi/400 grid; the root at y = 0 is counted separately by the
    caller."""
    if y_hi <= y_lo:
        return 0
    lo = max(y_lo, 1e-9)
    npts = max(int(np.ceil((y_hi - lo) / GRID_STEP)) + 1, 2)
    grid = np.linspace(lo, y_hi, npts)
    vals = h - ctx.G1(grid)
    s = np.sign(vals)
    if np.any(np.abs(vals) < 1e-13):
        raise DegenerateCase("grid counter hit a tangency")
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def count_G_roots_window(ctx: HarmonicContext, h: float, r: int, epsilon: float) -> int:
    """N_r: all roots of G in [-2r*pi + eps, 2r*pi + eps], including y = 0,
    using the evenness of G1."""
    return (
        grid_count_G_roots(ctx, h, 0.0, 2 * r * np.pi + epsilon)
        + grid_count_G_roots(ctx, h, 0.0, 2 * r * np.pi - epsilon)
        + 1
    )


def _e_pole_ordinates(np_: NormalizedPlant, y_max: float) -> list[float]:
    f0 = e_pole_polynomial(np_)
    if len(f0) <= 1:
        return []
    roots = npoly.polyroots(f0)
    out = []
    for x in roots:
        if abs(x.imag) < 1e-9 and x.real > 0:
            y = float(np.sqrt(x.real))
            if y < y_max:
                out.append(y)
    return sorted(out)


def grid_count_tanE_intersections(ctx: HarmonicContext, y_lo: float, y_hi: float) -> int:
    """Intersections of tan(y/2) with both branches of E(y) in (y_lo, y_hi],
    counted by sign changes of tan(y/2) - E on segments that avoid the poles
    of tan and of E; regions without a real branch contribute nothing."""
    margin = 1e-4
    cuts = [y_lo, y_hi]
    for p in np.arange(np.pi, y_hi + np.pi, 2 * np.pi):  # tan poles
        if y_lo < p < y_hi:
            cuts += [p - margin, p + margin]
    for p in _e_pole_ordinates(ctx.plant, y_hi):
        if y_lo < p < y_hi:
            cuts += [p - margin, p + margin]
    cuts = sorted(set(cuts))
    total = 0
    for a, b in zip(cuts, cuts[1:]):
        mid = 0.5 * (a + b)
        if any(abs(mid - p) < margin for p in np.arange(np.pi, y_hi + np.pi, 2 * np.pi)):
            continue
        if any(abs(mid - p) < margin for p in _e_pole_ordinates(ctx.plant, y_hi)):
            continue
        npts = max(int(np.ceil((b - a) / GRID_STEP)) + 1, 3)
        grid = np.linspace(a, b, npts)
        t = np.tan(grid / 2.0)
        for branch in (-1, +1):
            vals = t - ctx.E_branch(grid, branch)
            s = np.sign(vals)
            ok = np.isfinite(vals) & (s != 0)
            ss = s[ok]
            if ss.size >= 2:
                total += int(np.count_nonzero(ss[1:] != ss[:-1]))
    return total
