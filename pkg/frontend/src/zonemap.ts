/** Process-parameter zone map: a grid raster over two plant parameters,
 * colored by the zone/verdict returned by /api/check for each cell.
 *
 * Every cell is a server call (the UI computes no stability math locally);
 * calls run with bounded concurrency and a whole raster is dropped if a
 * newer one has been requested.
 */

import type { ApiClient, Plant } from "./api.js";

export interface ParamAxis {
  /** "T1", "T2", ... index into time_constants; "Z1", ... into zero_constants;
   * "K" gain; "L" delay. */
  name: string;
  min: number;
  max: number;
  steps: number;
}

export interface ZoneCell {
  v1: number;
  v2: number;
  zone: string | null;
  verdict: string;
}

export interface ZoneRaster {
  axis1: ParamAxis;
  axis2: ParamAxis;
  cells: ZoneCell[];
}

export const DEFAULT_RESOLUTION = 100;

export function applyParam(plant: Plant, name: string, value: number): Plant {
  const p: Plant = {
    gain: plant.gain,
    delay: plant.delay,
    time_constants: [...plant.time_constants],
    zero_constants: [...plant.zero_constants],
  };
  if (name === "K") p.gain = value;
  else if (name === "L") p.delay = value;
  else if (name.startsWith("T")) p.time_constants[Number(name.slice(1)) - 1] = value;
  else if (name.startsWith("Z")) p.zero_constants[Number(name.slice(1)) - 1] = value;
  else throw new Error(`unknown parameter ${name}`);
  return p;
}

export function axisValues(axis: ParamAxis): number[] {
  const out: number[] = [];
  for (let k = 0; k < axis.steps; k++) {
    out.push(axis.min + ((axis.max - axis.min) * k) / Math.max(axis.steps - 1, 1));
  }
  return out;
}

export async function fetchZoneRaster(
  client: ApiClient,
  plant: Plant,
  axis1: ParamAxis,
  axis2: ParamAxis,
  concurrency = 16,
  isStale: () => boolean = () => false,
): Promise<ZoneRaster | null> {
  const v1s = axisValues(axis1);
  const v2s = axisValues(axis2);
  const tasks: { v1: number; v2: number }[] = [];
  for (const v1 of v1s) for (const v2 of v2s) tasks.push({ v1, v2 });
  const cells: ZoneCell[] = new Array(tasks.length);
  let next = 0;
  const worker = async () => {
    for (;;) {
      const k = next++;
      if (k >= tasks.length || isStale()) return;
      const { v1, v2 } = tasks[k];
      const p = applyParam(applyParam(plant, axis1.name, v1), axis2.name, v2);
      try {
        const res = await client.check(p);
        cells[k] = { v1, v2, zone: res.report.zone, verdict: res.report.verdict };
      } catch {
        cells[k] = { v1, v2, zone: null, verdict: "Error" };
      }
    }
  };
  await Promise.all(Array.from({ length: concurrency }, worker));
  if (isStale()) return null;
  return { axis1, axis2, cells };
}

const ZONE_COLORS: Record<string, string> = {
  Z1: "#7ec87e",
  Z2: "#e8d06a",
  Z3: "#8aa8e8",
};

export function cellColor(cell: ZoneCell): string {
  if (cell.zone && ZONE_COLORS[cell.zone]) return ZONE_COLORS[cell.zone];
  if (cell.verdict === "Stabilizable") return "#bde3bd";
  if (cell.verdict === "Degenerate") return "#d8b7e8";
  if (cell.verdict === "Error") return "#f0b0b0";
  return "#e6e6e6";
}

/** SVG raster: one rect per cell plus boundary strokes where the label of
 * horizontally/vertically adjacent cells changes. */
export function renderZoneMap(raster: ZoneRaster, width = 420, height = 420): string {
  const { axis1, axis2, cells } = raster;
  const k1 = axis1.steps;
  const k2 = axis2.steps;
  const cw = width / k1;
  const ch = height / k2;
  const label = (c: ZoneCell) => c.zone ?? c.verdict;
  const at = (i: number, j: number) => cells[i * k2 + j];
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  ];
  for (let i = 0; i < k1; i++) {
    for (let j = 0; j < k2; j++) {
      const c = at(i, j);
      if (!c) continue;
      const x = i * cw;
      const y = height - (j + 1) * ch;
      parts.push(
        `<rect class="zone-cell" data-zone="${c.zone ?? ""}" data-verdict="${c.verdict}" ` +
          `x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${(cw + 0.5).toFixed(2)}" ` +
          `height="${(ch + 0.5).toFixed(2)}" fill="${cellColor(c)}"/>`,
      );
    }
  }
  const seg: string[] = [];
  for (let i = 0; i < k1; i++) {
    for (let j = 0; j < k2; j++) {
      const c = at(i, j);
      if (!c) continue;
      const right = i + 1 < k1 ? at(i + 1, j) : null;
      const up = j + 1 < k2 ? at(i, j + 1) : null;
      if (right && label(right) !== label(c)) {
        const x = (i + 1) * cw;
        seg.push(`M ${x.toFixed(2)} ${(height - (j + 1) * ch).toFixed(2)} V ${(height - j * ch).toFixed(2)}`);
      }
      if (up && label(up) !== label(c)) {
        const y = height - (j + 1) * ch;
        seg.push(`M ${(i * cw).toFixed(2)} ${y.toFixed(2)} H ${((i + 1) * cw).toFixed(2)}`);
      }
    }
  }
  if (seg.length) {
    parts.push(`<path class="zone-boundary" d="${seg.join(" ")}" stroke="#333" stroke-width="1" fill="none"/>`);
  }
  parts.push("</svg>");
  return parts.join("\n");
}
