import { describe, expect, it } from "vitest";

import { ApiClient, type FetchLike, type Plant } from "../src/api.js";
import { PROBE_HISTORY_CAP, SessionState, verdictFromVerify } from "../src/state.js";

const PLANT: Plant = { gain: 1, delay: 1, time_constants: [0.6, 0.8], zero_constants: [] };

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

const REGION_BODY = (h: number) => ({
  schema_version: "1",
  h,
  case: "Case1",
  constraints: [],
  triangles: [],
  polygon: [
    [0, 1.6],
    [0, -1.476],
    [2.6, 2.016],
  ],
  flags: [],
  interval: [-1, 2.33],
});

describe("verdictFromVerify", () => {
  it("maps oracle results to badges", () => {
    expect(
      verdictFromVerify({ schema_version: "1", rhp_zeros: 0, certified: true, marginal: false }),
    ).toBe("Stable");
    expect(
      verdictFromVerify({ schema_version: "1", rhp_zeros: 2, certified: true, marginal: false }),
    ).toBe("Unstable");
    expect(
      verdictFromVerify({ schema_version: "1", rhp_zeros: null, certified: false, marginal: true }),
    ).toBe("Marginal");
  });
});

describe("SessionState request ordering", () => {
  it("discards a region response superseded by a newer request", async () => {
    const gates: Array<() => void> = [];
    const fetchFn: FetchLike = (url, init) => {
      const { h } = JSON.parse(String(init!.body)) as { h: number };
      return new Promise((resolve) => {
        gates.push(() => resolve(jsonResponse(REGION_BODY(h))));
      });
    };
    const state = new SessionState(new ApiClient("", fetchFn), PLANT, 0.5);

    const first = state.refreshRegion();
    state.h = 1.0;
    const second = state.refreshRegion();
    // Second response arrives first, then the stale first response.
    gates[1]();
    const res2 = await second;
    gates[0]();
    const res1 = await first;

    expect(res2?.h).toBe(1.0);
    expect(res1).toBeNull();
    expect(state.lastRegion?.h).toBe(1.0);
  });

  it("uses strictly increasing request ids across widgets", () => {
    const state = new SessionState(new ApiClient("", () => Promise.reject()), PLANT, 0.5);
    const ids = [state.issue("region"), state.issue("probe"), state.issue("region")];
    expect(ids[0]).toBeLessThan(ids[1]);
    expect(ids[1]).toBeLessThan(ids[2]);
    expect(state.shouldApply("region", ids[0])).toBe(false);
    expect(state.shouldApply("region", ids[2])).toBe(true);
  });
});

describe("probe history", () => {
  const verifyFetch =
    (zeros: number): FetchLike =>
    () =>
      Promise.resolve(
        jsonResponse({ schema_version: "1", rhp_zeros: zeros, certified: true, marginal: false }),
      );

  it("appends entries with the verdict and request id", async () => {
    const state = new SessionState(new ApiClient("", verifyFetch(0)), PLANT, 0.5);
    const entry = await state.probe(1.0, 0.5);
    expect(entry?.verdict).toBe("Stable");
    expect(state.probeHistory).toHaveLength(1);
    expect(state.probeHistory[0].h_i).toBe(1.0);
    expect(state.probeHistory[0].requestId).toBeGreaterThan(0);
  });

  it("caps the history at 50 entries, keeping the newest", async () => {
    const state = new SessionState(new ApiClient("", verifyFetch(1)), PLANT, 0.5);
    for (let k = 0; k < PROBE_HISTORY_CAP + 7; k++) {
      await state.probe(k, 0);
    }
    expect(state.probeHistory).toHaveLength(PROBE_HISTORY_CAP);
    expect(state.probeHistory[0].h_i).toBe(7);
    expect(state.probeHistory[PROBE_HISTORY_CAP - 1].h_i).toBe(PROBE_HISTORY_CAP + 6);
  });
});
