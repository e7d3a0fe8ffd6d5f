/** Session state: plant draft, proportional gain, last server responses and
 * the probe history. Only server-confirmed data is stored; responses that
 * arrive after a newer request for the same widget are discarded.
 */

import type {
  ApiClient,
  CheckResponse,
  Plant,
  RegionResponse,
  VerifyResponse,
} from "./api.js";

export type ProbeVerdict = "Stable" | "Unstable" | "Marginal";

export interface ProbeEntry {
  h_i: number;
  h_d: number;
  verdict: ProbeVerdict;
  rhp_zeros: number | null;
  requestId: number;
}

export const PROBE_HISTORY_CAP = 50;

export function verdictFromVerify(v: VerifyResponse): ProbeVerdict {
  if (v.marginal || v.rhp_zeros === null) return "Marginal";
  return v.rhp_zeros === 0 ? "Stable" : "Unstable";
}

type Widget = "region" | "check" | "probe" | "zones";

export class SessionState {
  plant: Plant;
  h: number;
  lastRegion: RegionResponse | null = null;
  lastCheck: CheckResponse | null = null;
  lastZones: unknown | null = null;
  probeHistory: ProbeEntry[] = [];

  private nextId = 0;
  private latestIssued: Partial<Record<Widget, number>> = {};
  private latestApplied: Partial<Record<Widget, number>> = {};

  constructor(
    private readonly client: ApiClient,
    plant: Plant,
    h: number,
  ) {
    this.plant = plant;
    this.h = h;
  }

  /** Monotonic request ids, shared across widgets. */
  issue(widget: Widget): number {
    const id = ++this.nextId;
    this.latestIssued[widget] = id;
    return id;
  }

  /** A response is applied only if no newer request for the same widget has
   * been issued since, and never twice out of order. */
  shouldApply(widget: Widget, id: number): boolean {
    if (this.latestIssued[widget] !== id) return false;
    if ((this.latestApplied[widget] ?? 0) > id) return false;
    this.latestApplied[widget] = id;
    return true;
  }

  async refreshRegion(): Promise<RegionResponse | null> {
    const id = this.issue("region");
    const res = await this.client.region(this.plant, this.h);
    if (!this.shouldApply("region", id)) return null;
    this.lastRegion = res;
    return res;
  }

  async refreshCheck(): Promise<CheckResponse | null> {
    const id = this.issue("check");
    const res = await this.client.check(this.plant);
    if (!this.shouldApply("check", id)) return null;
    this.lastCheck = res;
    return res;
  }

  async probe(hI: number, hD: number): Promise<ProbeEntry | null> {
    const id = this.issue("probe");
    const res = await this.client.verify(this.plant, this.h, hI, hD);
    if (!this.shouldApply("probe", id)) return null;
    const entry: ProbeEntry = {
      h_i: hI,
      h_d: hD,
      verdict: verdictFromVerify(res),
      rhp_zeros: res.rhp_zeros,
      requestId: id,
    };
    this.probeHistory.push(entry);
    if (this.probeHistory.length > PROBE_HISTORY_CAP) {
      this.probeHistory.splice(0, this.probeHistory.length - PROBE_HISTORY_CAP);
    }
    return entry;
  }
}
