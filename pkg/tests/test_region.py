"""Region geometry: admissible interval, constraints, triangles, polygon."""

import numpy as np
import pytest

from delaystab.errors import DegenerateCase
from delaystab.harmonic import HarmonicContext
from delaystab.plant import PlantSpec, normalize
from delaystab.region import (
    admissible_h,
    build_constraints,
    clip_halfplane,
    compute_region,
    g_roots,
    intersect_region,
    pair_roots,
    sweep_h,
    triangle_geometry,
)
from delaystab.stabilizability import analyze

H_WORKED = 0.5


@pytest.fixture(scope="module")
def worked_region(worked_ctx):
    return compute_region(worked_ctx, "Case1", H_WORKED)


class TestAdmissibleInterval:
    def test_worked_example_interval(self, worked_ctx):
        iv = admissible_h(worked_ctx, "Case1")
        assert iv.lower == -1.0
        assert iv.upper == pytest.approx(2.330, abs=0.002)
        assert iv.contains(0.5)
        assert not iv.contains(2.4)
        assert not iv.contains(-1.0)  # open endpoint


class TestRootsAndPairs:
    def test_worked_example_roots(self, worked_ctx):
        roots = g_roots(worked_ctx, H_WORKED, 3 * np.pi)
        expected = [0.863, 2.498, 5.285, 8.191]
        assert len(roots) >= 4
        for r, e in zip(roots[:4], expected):
            assert r == pytest.approx(e, abs=0.002)

    def test_F1_at_roots(self, worked_ctx):
        roots = g_roots(worked_ctx, H_WORKED, 3 * np.pi)[:4]
        f1 = worked_ctx.F1(roots)
        assert f1[0] == pytest.approx(1.099, abs=0.002)
        assert f1[1] == pytest.approx(-9.985, abs=0.002)
        assert f1[2] == pytest.approx(76.290, abs=0.005)
        assert f1[3] == pytest.approx(-272.288, abs=0.005)

    def test_pairing_alternating_slopes(self, worked_ctx):
        roots = g_roots(worked_ctx, H_WORKED, 3 * np.pi)
        pairs = pair_roots(worked_ctx, roots)
        for p in pairs:
            assert p.slope_a * p.slope_b < 0


class TestTriangles:
    def test_first_triangle_vertices(self, worked_ctx):
        roots = g_roots(worked_ctx, H_WORKED, 3 * np.pi)
        pairs = pair_roots(worked_ctx, roots)
        t1 = triangle_geometry(pairs[0], H_WORKED, 0.0, worked_ctx)
        hiV1 = t1.V[0]
        t1 = triangle_geometry(pairs[0], H_WORKED, hiV1, worked_ctx)
        assert t1.V[0] == pytest.approx(2.600, abs=0.002)
        assert t1.V[1] == pytest.approx(2.016, abs=0.002)
        assert t1.U[1] == pytest.approx(1.600, abs=0.002)
        assert t1.W[1] == pytest.approx(-1.476, abs=0.002)

    def test_second_triangle_and_probes(self, worked_ctx):
        roots = g_roots(worked_ctx, H_WORKED, 3 * np.pi)
        pairs = pair_roots(worked_ctx, roots)
        t1 = triangle_geometry(pairs[0], H_WORKED, 0.0, worked_ctx)
        hiV1 = t1.V[0]
        t2 = triangle_geometry(pairs[1], H_WORKED, hiV1, worked_ctx)
        assert t2.U[1] == pytest.approx(4.058, abs=0.002)
        assert t2.W[1] == pytest.approx(-2.732, abs=0.002)
        assert t2.R == pytest.approx(4.097, abs=0.002)
        assert t2.S == pytest.approx(-2.638, abs=0.002)


class TestConstraints:
    def test_directions_by_slope_sign(self, worked_ctx):
        roots = g_roots(worked_ctx, H_WORKED, 3 * np.pi)[:4]
        cons = build_constraints(worked_ctx, "Case1", roots)
        assert cons[0].kind == "axis" and cons[0].direction == "gt"
        # slopes alternate +,-,+,- over the first four roots
        dirs = [c.direction for c in cons[1:]]
        assert dirs == ["lt", "gt", "lt", "gt"]

    def test_halfplane_satisfaction(self, worked_ctx):
        roots = g_roots(worked_ctx, H_WORKED, 3 * np.pi)[:4]
        cons = build_constraints(worked_ctx, "Case1", roots)
        inside = (1.0, 0.5)  # (h_i, h_d) inside the worked region
        outside = (5.0, 0.0)
        assert all(c.satisfied(*inside) for c in cons)
        assert not all(c.satisfied(*outside) for c in cons)

    def test_near_double_root_raises(self):
        from delaystab.rootfind import find_roots

        f = lambda x: (x - 1.0) * (x - 1.0 - 5e-7)
        with pytest.raises(DegenerateCase):
            find_roots(f, 0.9999, 1.0001, step=1e-8, degenerate_check=True)

    def test_zero_slope_constraint_rejected(self, worked_ctx):
        # a root sitting exactly on a G1 extremum has no half-plane direction
        from scipy.optimize import brentq

        _, extrema = worked_ctx.hm_envelope()
        ym = extrema[0][0]
        ym = brentq(lambda y: float(worked_ctx.G1_derivs(np.array([y]))[0][0]), ym - 1e-3, ym + 1e-3, xtol=1e-15)
        slope = abs(float(worked_ctx.G1_derivs(np.array([ym]))[0][0]))
        if slope < 1e-12:
            with pytest.raises(DegenerateCase):
                build_constraints(worked_ctx, "Case1", np.array([ym]))


class TestClipping:
    def test_clip_square_by_diagonal(self):
        poly = np.array([(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)])
        out = clip_halfplane(poly, 1.0, 1.0, 2.0)  # x + y <= 2
        assert len(out) == 3
        area = 0.5 * abs(
            sum(
                out[i][0] * out[(i + 1) % len(out)][1] - out[(i + 1) % len(out)][0] * out[i][1]
                for i in range(len(out))
            )
        )
        assert area == pytest.approx(2.0)

    def test_empty_intersection(self):
        poly = np.array([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
        out = clip_halfplane(poly, 1.0, 0.0, -1.0)  # x <= -1
        assert len(out) == 0

    def test_unbounded_flag(self, worked_ctx):
        # axis constraint alone leaves the seed box edges exposed
        cons = build_constraints(worked_ctx, "Case1", np.array([]))
        poly, flags = intersect_region(cons)
        assert "Unbounded" in flags


class TestRegionPipeline:
    def test_worked_polygon_is_first_triangle(self, worked_region):
        # pair 2's half-planes are slack: the polygon is V1-U1-W1
        poly = worked_region.polygon
        assert len(poly) == 3
        verts = sorted(map(tuple, np.round(poly, 3).tolist()))
        expected = sorted([(0.0, 1.6), (0.0, -1.476), (2.6, 2.016)])
        for v, e in zip(verts, expected):
            assert v[0] == pytest.approx(e[0], abs=0.002)
            assert v[1] == pytest.approx(e[1], abs=0.002)

    def test_polygon_is_ccw(self, worked_region):
        poly = worked_region.polygon
        area2 = sum(
            poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
            for i in range(len(poly))
        )
        assert area2 > 0

    def test_termination_keeps_two_pairs(self, worked_region):
        assert len(worked_region.pairs) == 2
        assert worked_region.y_r2 > worked_region.pairs[0].y_b

    def test_rectangle_bound_applied(self):
        p = PlantSpec(gain=1, delay=1, time_constants=(1.0, 2.0), zero_constants=(0.5,))
        rep = analyze(p)
        ctx = HarmonicContext(normalize(p))
        region = compute_region(ctx, rep.case, 0.5, hd_bound=rep.hd_bound)
        assert rep.hd_bound == pytest.approx(4.0, abs=1e-9)
        assert np.all(np.abs(region.polygon[:, 1]) <= 4.0 + 1e-9)

    def test_sweep_midpoint_and_continuity(self, worked_ctx):
        iv = admissible_h(worked_ctx, "Case1")
        slices = sweep_h(worked_ctx, "Case1", iv, steps=5)
        hs = [h for h, _ in slices]
        assert all(iv.contains(h) for h in hs)
        assert hs == sorted(hs)
        # polygon area varies continuously: neighbors within a factor of 4
        def area(reg):
            p = reg.polygon
            if len(p) < 3:
                return 0.0
            return 0.5 * abs(
                sum(
                    p[i][0] * p[(i + 1) % len(p)][1] - p[(i + 1) % len(p)][0] * p[i][1]
                    for i in range(len(p))
                )
            )

        areas = [area(reg) for _, reg in slices]
        assert all(a > 0 for a in areas)
        for a, b in zip(areas, areas[1:]):
            assert max(a, b) / min(a, b) < 4.0
