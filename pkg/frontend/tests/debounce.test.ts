import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { debounce } from "../src/debounce.js";

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once per quiet period with the latest arguments", () => {
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 150);
    d(1);
    vi.advanceTimersByTime(100);
    d(2);
    vi.advanceTimersByTime(100);
    d(3);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([3]);
  });

  it("issues at most one call per 150 ms under a rapid drag", () => {
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 150);
    // 10 ms event cadence for one second, like a slider drag.
    for (let t = 0; t < 1000; t += 10) {
      d(t);
      vi.advanceTimersByTime(10);
    }
    vi.advanceTimersByTime(200);
    expect(calls.length).toBeLessThanOrEqual(Math.ceil(1200 / 150));
    expect(calls[calls.length - 1]).toBe(990);
  });

  it("cancel drops the pending call", () => {
    const fn = vi.fn();
    const d = debounce(fn, 150);
    d();
    d.cancel();
    vi.advanceTimersByTime(500);
    expect(fn).not.toHaveBeenCalled();
  });

  it("flush runs the pending call immediately", () => {
    const fn = vi.fn();
    const d = debounce(fn, 150);
    d();
    d.flush();
    expect(fn).toHaveBeenCalledTimes(1);
    vi.advanceTimersByTime(500);
    expect(fn).toHaveBeenCalledTimes(1);
  });
});
