/** DOM wiring for the tuning-chart explorer.
 *
 * Layout: plant editor + h slider on the left, region chart in the middle
 * (click to probe), zone map and probe history on the right. All numbers
 * shown come from server responses.
 */

import { ApiClient, ApiError, type Plant } from "./api.js";
import { debounce } from "./debounce.js";
import {
  DEFAULT_OPTIONS,
  makeTransform,
  pixelToData,
  renderDiagnosticPanel,
  renderRegionChart,
} from "./chart.js";
import { SessionState } from "./state.js";
import { fetchZoneRaster, renderZoneMap, type ParamAxis } from "./zonemap.js";

const DEFAULT_PLANT: Plant = {
  gain: 1.0,
  delay: 1.0,
  time_constants: [0.6, 0.8],
  zero_constants: [],
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function boot(baseUrl = ""): void {
  const client = new ApiClient(baseUrl);
  const state = new SessionState(client, DEFAULT_PLANT, 0.5);

  const plantInput = el<HTMLTextAreaElement>("plant-json");
  const plantError = el<HTMLDivElement>("plant-error");
  const slider = el<HTMLInputElement>("h-slider");
  const sliderLabel = el<HTMLSpanElement>("h-value");
  const intervalLabel = el<HTMLSpanElement>("h-interval");
  const chartHost = el<HTMLDivElement>("chart");
  const diagHost = el<HTMLDivElement>("diagnostics");
  const historyHost = el<HTMLUListElement>("probe-history");
  const zoneHost = el<HTMLDivElement>("zonemap");
  const zoneButton = el<HTMLButtonElement>("zonemap-refresh");
  const zoneRes = el<HTMLInputElement>("zonemap-resolution");
  const retryButton = el<HTMLButtonElement>("retry");

  plantInput.value = JSON.stringify(state.plant, null, 2);

  let lastAction: () => void = () => void refreshRegion();
  retryButton.addEventListener("click", () => lastAction());
  retryButton.hidden = true;

  function showError(err: unknown): void {
    if (err instanceof ApiError) {
      diagHost.innerHTML = renderDiagnosticPanel(err.message, err.payload?.report);
      retryButton.hidden = true;
    } else {
      diagHost.innerHTML = renderDiagnosticPanel(
        `network failure: ${err instanceof Error ? err.message : String(err)}`,
      );
      retryButton.hidden = false;
    }
  }

  function drawRegion(): void {
    const region = state.lastRegion;
    if (!region) return;
    chartHost.innerHTML = renderRegionChart(region, DEFAULT_OPTIONS);
    diagHost.innerHTML = "";
    retryButton.hidden = true;
    const [lo, hi] = region.interval;
    // Keep the slider strictly inside the open admissible interval.
    const eps = (hi - lo) * 1e-3;
    slider.min = String(lo + eps);
    slider.max = String(hi - eps);
    slider.step = String((hi - lo) / 400);
    slider.value = String(state.h);
    sliderLabel.textContent = state.h.toFixed(3);
    intervalLabel.textContent = `(${lo.toFixed(3)}, ${hi.toFixed(3)})`;
    const svg = chartHost.querySelector("svg");
    if (svg) {
      svg.addEventListener("click", (ev) => {
        const rect = svg.getBoundingClientRect();
        const t = makeTransform(region, DEFAULT_OPTIONS);
        const [hI, hD] = pixelToData(t, ev.clientX - rect.left, ev.clientY - rect.top);
        lastAction = () => void probe(hI, hD);
        void probe(hI, hD);
      });
    }
  }

  function drawHistory(): void {
    historyHost.innerHTML = state.probeHistory
      .slice()
      .reverse()
      .map(
        (p) =>
          `<li><span class="badge badge-${p.verdict.toLowerCase()}">${p.verdict}</span> ` +
          `h_i=${p.h_i.toFixed(3)}, h_d=${p.h_d.toFixed(3)}` +
          (p.rhp_zeros === null ? "" : ` (unstable zeros: ${p.rhp_zeros})`) +
          "</li>",
      )
      .join("");
  }

  async function probe(hI: number, hD: number): Promise<void> {
    try {
      const entry = await state.probe(hI, hD);
      if (entry) drawHistory();
    } catch (err) {
      showError(err);
    }
  }

  async function refreshRegion(): Promise<void> {
    lastAction = () => void refreshRegion();
    try {
      const res = await state.refreshRegion();
      if (res) drawRegion();
    } catch (err) {
      showError(err);
    }
  }

  const debouncedRegion = debounce(() => void refreshRegion(), 150);

  slider.addEventListener("input", () => {
    state.h = Number(slider.value);
    sliderLabel.textContent = state.h.toFixed(3);
    debouncedRegion();
  });

  plantInput.addEventListener("change", () => {
    try {
      const parsed = JSON.parse(plantInput.value) as Plant;
      plantError.textContent = "";
      state.plant = parsed;
      void refreshRegion();
    } catch (err) {
      plantError.textContent = `invalid JSON: ${err instanceof Error ? err.message : err}`;
    }
  });

  let zoneEpoch = 0;
  async function refreshZones(): Promise<void> {
    const epoch = ++zoneEpoch;
    const steps = Math.max(2, Math.min(200, Number(zoneRes.value) || 100));
    const axis1: ParamAxis = { name: "T1", min: -3, max: 3, steps };
    const axis2: ParamAxis = { name: "T2", min: -3, max: 3, steps };
    zoneHost.innerHTML = `<p>scanning ${steps}×${steps} grid…</p>`;
    try {
      const raster = await fetchZoneRaster(
        client,
        state.plant,
        axis1,
        axis2,
        16,
        () => epoch !== zoneEpoch,
      );
      if (raster) zoneHost.innerHTML = renderZoneMap(raster);
    } catch (err) {
      showError(err);
    }
  }
  zoneButton.addEventListener("click", () => void refreshZones());

  void refreshRegion();
}

if (typeof document !== "undefined" && document.getElementById("chart")) {
  boot();
}
