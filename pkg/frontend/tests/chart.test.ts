import { describe, expect, it } from "vitest";

import type { RegionResponse } from "../src/api.js";
import {
  DEFAULT_OPTIONS,
  dataToPixel,
  makeTransform,
  pixelToData,
  renderDiagnosticPanel,
  renderRegionChart,
} from "../src/chart.js";

// Second-order lag plant, h = 0.5: the first-pair triangle degenerates to
// the final stability polygon with these three vertices.
const WORKED_REGION: RegionResponse = {
  schema_version: "1",
  h: 0.5,
  case: "Case1",
  constraints: [
    { y0: 0, rhs: 0, dir: "gt" },
    { y0: 0.863, rhs: 1.0992, dir: "lt" },
    { y0: 2.498, rhs: -9.985, dir: "gt" },
    { y0: 5.285, rhs: 76.29, dir: "lt" },
    { y0: 8.191, rhs: -272.288, dir: "gt" },
  ],
  triangles: [
    { V: [2.6, 2.016], U: [0, 1.6], W: [0, -1.476] },
    { V: [2.6, 2.016], U: [2.6, 4.058], W: [2.6, -2.732] },
  ],
  polygon: [
    [0, 1.6],
    [0, -1.476],
    [2.6, 2.016],
  ],
  flags: [],
  interval: [-1, 2.33],
};

describe("coordinate transforms", () => {
  it("round-trips data -> pixel -> data far below the 1/200 tolerance", () => {
    const t = makeTransform(WORKED_REGION);
    for (const [hI, hD] of WORKED_REGION.polygon) {
      const [px, py] = dataToPixel(t, hI, hD);
      const [hI2, hD2] = pixelToData(t, px, py);
      expect(Math.abs(hI2 - hI)).toBeLessThan(1 / 200);
      expect(Math.abs(hD2 - hD)).toBeLessThan(1 / 200);
    }
  });

  it("maps distinct data points to distinct pixels inside the viewport", () => {
    const t = makeTransform(WORKED_REGION);
    const [ax, ay] = dataToPixel(t, 0, 1.6);
    const [bx, by] = dataToPixel(t, 2.6, 2.016);
    expect(ax).not.toBeCloseTo(bx, 1);
    expect(Math.hypot(ax - bx, ay - by)).toBeGreaterThan(10);
    for (const v of [ax, ay, bx, by]) {
      expect(v).toBeGreaterThanOrEqual(0);
      expect(v).toBeLessThanOrEqual(DEFAULT_OPTIONS.width);
    }
  });
});

describe("renderRegionChart", () => {
  it("emits the three worked-example vertices at correct pixel coordinates", () => {
    const svg = renderRegionChart(WORKED_REGION);
    const t = makeTransform(WORKED_REGION);
    const circles = [...svg.matchAll(/<circle class="vertex"[^>]*>/g)].map((m) => m[0]);
    expect(circles).toHaveLength(3);
    for (const [hI, hD] of WORKED_REGION.polygon) {
      const tag = circles.find(
        (c) => c.includes(`data-h_i="${hI}"`) && c.includes(`data-h_d="${hD}"`),
      );
      expect(tag, `vertex (${hI}, ${hD}) missing`).toBeDefined();
      const cx = Number(/cx="([-\d.]+)"/.exec(tag!)![1]);
      const cy = Number(/cy="([-\d.]+)"/.exec(tag!)![1]);
      const [hI2, hD2] = pixelToData(t, cx, cy);
      expect(Math.abs(hI2 - hI)).toBeLessThan(1 / 200);
      expect(Math.abs(hD2 - hD)).toBeLessThan(1 / 200);
    }
  });

  it("draws constraint lines with the generating root on hover", () => {
    const svg = renderRegionChart(WORKED_REGION);
    expect(svg).toContain('data-y0="0.863"');
    expect(svg).toContain("<title>y0=0.863 (upper)</title>");
    expect((svg.match(/class="constraint"/g) ?? []).length).toBe(
      WORKED_REGION.constraints.length,
    );
  });

  it("labels both axes", () => {
    const svg = renderRegionChart(WORKED_REGION);
    expect(svg).toContain(">h_i</text>");
    expect(svg).toContain(">h_d</text>");
  });

  it("shows the shaded empty state when the polygon is empty", () => {
    const svg = renderRegionChart({ ...WORKED_REGION, polygon: [] });
    expect(svg).toContain('class="empty-region"');
    expect(svg).toContain("no stabilizing PID at this h");
    expect(svg).not.toContain('class="vertex"');
  });

  it("does not crash on a degenerate payload", () => {
    const bad = { ...WORKED_REGION, triangles: [], polygon: [], constraints: [] };
    expect(() => renderRegionChart(bad)).not.toThrow();
  });
});

describe("renderDiagnosticPanel", () => {
  it("renders the prerequisite report fields and escapes markup", () => {
    const html = renderDiagnosticPanel("plant is <not> stabilizable", {
      principal_term_ok: true,
      principal_term_reason: null,
      case: "Case1",
      m_p: 0,
      epsilon: "0",
      phi1: -1.2,
      phi2: 3.4,
      pole_count: 1,
      pole_count_certified: true,
      Ne1: null,
      required_Ne: {},
      achieved_Ne: {},
      hd_bound: null,
      zone: "Z2",
      feature_vector: [1, -1, 1],
      verdict: "NotStabilizable",
      flags: ["count_shortfall"],
    });
    expect(html).toContain("plant is &lt;not&gt; stabilizable");
    expect(html).toContain("NotStabilizable");
    expect(html).toContain("Z2");
    expect(html).toContain("count_shortfall");
  });
});
