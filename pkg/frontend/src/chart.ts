/** Pure SVG rendering of a stability-region payload.
 *
 * Everything here is a pure function of the region JSON, so the coordinate
 * transforms and the emitted markup can be tested in node without a DOM.
 * Axes: h_i horizontal, h_d vertical (up = positive).
 */

import type { ConstraintDto, RegionResponse, Report } from "./api.js";

export interface ChartOptions {
  width: number;
  height: number;
  padPx: number;
}

export const DEFAULT_OPTIONS: ChartOptions = { width: 640, height: 480, padPx: 48 };

/** Affine data<->pixel mapping for the (h_i, h_d) plane. */
export interface Transform {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
  width: number;
  height: number;
  padPx: number;
}

function dataExtent(region: Pick<RegionResponse, "triangles" | "polygon">): {
  xs: number[];
  ys: number[];
} {
  const xs: number[] = [];
  const ys: number[] = [];
  for (const t of region.triangles) {
    for (const p of [t.V, t.U, t.W]) {
      xs.push(p[0]);
      ys.push(p[1]);
    }
  }
  for (const p of region.polygon) {
    xs.push(p[0]);
    ys.push(p[1]);
  }
  if (xs.length === 0) {
    xs.push(-1, 1);
    ys.push(-1, 1);
  }
  return { xs, ys };
}

export function makeTransform(
  region: Pick<RegionResponse, "triangles" | "polygon">,
  opts: ChartOptions = DEFAULT_OPTIONS,
): Transform {
  const { xs, ys } = dataExtent(region);
  let xMin = Math.min(...xs);
  let xMax = Math.max(...xs);
  let yMin = Math.min(...ys);
  let yMax = Math.max(...ys);
  // Keep the origin in view: constraint lines pivot on the h_i axis.
  xMin = Math.min(xMin, 0);
  xMax = Math.max(xMax, 0);
  yMin = Math.min(yMin, 0);
  yMax = Math.max(yMax, 0);
  const padX = 0.08 * Math.max(xMax - xMin, 1e-9);
  const padY = 0.08 * Math.max(yMax - yMin, 1e-9);
  return {
    xMin: xMin - padX,
    xMax: xMax + padX,
    yMin: yMin - padY,
    yMax: yMax + padY,
    width: opts.width,
    height: opts.height,
    padPx: opts.padPx,
  };
}

export function dataToPixel(t: Transform, hI: number, hD: number): [number, number] {
  const innerW = t.width - 2 * t.padPx;
  const innerH = t.height - 2 * t.padPx;
  const px = t.padPx + ((hI - t.xMin) / (t.xMax - t.xMin)) * innerW;
  const py = t.padPx + ((t.yMax - hD) / (t.yMax - t.yMin)) * innerH;
  return [px, py];
}

export function pixelToData(t: Transform, px: number, py: number): [number, number] {
  const innerW = t.width - 2 * t.padPx;
  const innerH = t.height - 2 * t.padPx;
  const hI = t.xMin + ((px - t.padPx) / innerW) * (t.xMax - t.xMin);
  const hD = t.yMax - ((py - t.padPx) / innerH) * (t.yMax - t.yMin);
  return [hI, hD];
}

function fmt(x: number): string {
  return Number(x.toFixed(3)).toString();
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Segment of a constraint line h_d = (h_i - rhs) / y0^2 ... expressed via
 * the half-plane boundary: each constraint is affine in (h_i, h_d); the DTO
 * gives the generating root y0 and the boundary h_i = rhs + slope * h_d,
 * rendered as the line through the current view.
 */
function constraintLine(t: Transform, c: ConstraintDto): string {
  // Boundary: h_i - h_d * y0^2 = rhs  =>  h_i = rhs + y0^2 * h_d.
  const slope = c.y0 * c.y0;
  const p1 = dataToPixel(t, c.rhs + slope * t.yMin, t.yMin);
  const p2 = dataToPixel(t, c.rhs + slope * t.yMax, t.yMax);
  const title = `y0=${fmt(c.y0)} (${c.dir === "lt" ? "upper" : "lower"})`;
  return (
    `<line class="constraint" data-y0="${fmt(c.y0)}" data-dir="${c.dir}" ` +
    `x1="${fmt(p1[0])}" y1="${fmt(p1[1])}" x2="${fmt(p2[0])}" y2="${fmt(p2[1])}" ` +
    `stroke="#b0b0d0" stroke-width="1" stroke-dasharray="4 3">` +
    `<title>${escapeXml(title)}</title></line>`
  );
}

function pathFrom(t: Transform, pts: [number, number][], close: boolean): string {
  const cmds = pts.map((p, k) => {
    const [px, py] = dataToPixel(t, p[0], p[1]);
    return `${k === 0 ? "M" : "L"} ${fmt(px)} ${fmt(py)}`;
  });
  if (close) cmds.push("Z");
  return cmds.join(" ");
}

function axes(t: Transform): string {
  const [ox, oy] = dataToPixel(t, 0, 0);
  const parts: string[] = [];
  parts.push(
    `<line x1="${fmt(t.padPx)}" y1="${fmt(oy)}" x2="${fmt(t.width - t.padPx)}" y2="${fmt(oy)}" stroke="#444" stroke-width="1"/>`,
  );
  parts.push(
    `<line x1="${fmt(ox)}" y1="${fmt(t.padPx)}" x2="${fmt(ox)}" y2="${fmt(t.height - t.padPx)}" stroke="#444" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmt(t.width - t.padPx + 6)}" y="${fmt(oy + 4)}" font-size="14" font-style="italic">h_i</text>`,
  );
  parts.push(
    `<text x="${fmt(ox + 6)}" y="${fmt(t.padPx - 8)}" font-size="14" font-style="italic">h_d</text>`,
  );
  for (const x of ticks(t.xMin, t.xMax)) {
    const [px] = dataToPixel(t, x, 0);
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(oy - 3)}" x2="${fmt(px)}" y2="${fmt(oy + 3)}" stroke="#444"/>`);
    parts.push(`<text x="${fmt(px)}" y="${fmt(oy + 16)}" font-size="10" text-anchor="middle">${fmt(x)}</text>`);
  }
  for (const y of ticks(t.yMin, t.yMax)) {
    const [, py] = dataToPixel(t, 0, y);
    parts.push(`<line x1="${fmt(ox - 3)}" y1="${fmt(py)}" x2="${fmt(ox + 3)}" y2="${fmt(py)}" stroke="#444"/>`);
    parts.push(`<text x="${fmt(ox - 6)}" y="${fmt(py + 3)}" font-size="10" text-anchor="end">${fmt(y)}</text>`);
  }
  return parts.join("\n");
}

function ticks(lo: number, hi: number): number[] {
  const span = hi - lo;
  const raw = span / 6;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= 7) ?? 10 * mag;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12; v += step) {
    if (Math.abs(v) > 1e-12) out.push(v);
  }
  return out;
}

/** Render the region chart as an SVG string. Vertex markers carry
 * data-h_i / data-h_d attributes so tests and hover handlers can read the
 * data coordinates straight off the markup. */
export function renderRegionChart(
  region: RegionResponse,
  opts: ChartOptions = DEFAULT_OPTIONS,
): string {
  const t = makeTransform(region, opts);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${opts.width}" height="${opts.height}" viewBox="0 0 ${opts.width} ${opts.height}">`,
  );
  parts.push(`<rect width="${opts.width}" height="${opts.height}" fill="#ffffff"/>`);
  parts.push(axes(t));
  for (const c of region.constraints) parts.push(constraintLine(t, c));
  for (const tri of region.triangles) {
    parts.push(
      `<path class="triangle" d="${pathFrom(t, [tri.V, tri.U, tri.W], true)}" fill="none" stroke="#999999" stroke-width="1"/>`,
    );
  }
  if (region.polygon.length >= 3) {
    parts.push(
      `<path class="region-polygon" d="${pathFrom(t, region.polygon, true)}" ` +
        `fill="#7ec87e" fill-opacity="0.45" stroke="#2a6b2a" stroke-width="2"/>`,
    );
    for (const [hI, hD] of region.polygon) {
      const [px, py] = dataToPixel(t, hI, hD);
      parts.push(
        `<circle class="vertex" data-h_i="${hI}" data-h_d="${hD}" ` +
          `cx="${fmt(px)}" cy="${fmt(py)}" r="4" fill="#2a6b2a"/>`,
      );
    }
  } else {
    parts.push(
      `<rect class="empty-region" x="${fmt(t.padPx)}" y="${fmt(t.padPx)}" ` +
        `width="${fmt(opts.width - 2 * t.padPx)}" height="${fmt(opts.height - 2 * t.padPx)}" ` +
        `fill="#cccccc" fill-opacity="0.3"/>`,
    );
    parts.push(
      `<text class="empty-region-label" x="${fmt(opts.width / 2)}" y="${fmt(opts.height / 2)}" ` +
        `text-anchor="middle" font-size="16">no stabilizing PID at this h</text>`,
    );
  }
  parts.push(`<text x="8" y="18" font-size="12">h = ${fmt(region.h)} (${escapeXml(region.case)})</text>`);
  parts.push("</svg>");
  return parts.join("\n");
}

/** Render a 422 prerequisite report as an inline diagnostic panel (HTML). */
export function renderDiagnosticPanel(message: string, report?: Report): string {
  const rows: string[] = [`<p class="diag-message">${escapeXml(message)}</p>`];
  if (report) {
    rows.push("<dl>");
    rows.push(`<dt>verdict</dt><dd>${escapeXml(report.verdict)}</dd>`);
    rows.push(`<dt>case</dt><dd>${escapeXml(report.case)}</dd>`);
    if (report.zone) rows.push(`<dt>zone</dt><dd>${escapeXml(report.zone)}</dd>`);
    rows.push(`<dt>phi1</dt><dd>${fmt(report.phi1)}</dd>`);
    rows.push(`<dt>phi2</dt><dd>${fmt(report.phi2)}</dd>`);
    rows.push(`<dt>pole count</dt><dd>${report.pole_count}</dd>`);
    if (report.flags.length) rows.push(`<dt>flags</dt><dd>${escapeXml(report.flags.join(", "))}</dd>`);
    rows.push("</dl>");
  }
  return `<div class="diagnostic-panel">${rows.join("")}</div>`;
}
