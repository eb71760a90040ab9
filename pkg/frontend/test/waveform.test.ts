import { describe, expect, it } from "vitest";

import { tracePoints } from "../src/waveform.js";

describe("tracePoints", () => {
  it("draws an all-zero preview as the flat centerline", () => {
    const points = tracePoints(new Array(256).fill(0), 720, 140);
    for (const [, y] of points) {
      expect(y).toBe(70);
    }
    expect(points.length).toBe(256);
  });

  it("spans the full width with the first and last samples", () => {
    const points = tracePoints([0.1, 0.2, 0.3, 0.4], 600, 100);
    expect(points[0][0]).toBe(0);
    expect(points[3][0]).toBe(600);
    expect(points[1][0]).toBeCloseTo(200, 9);
  });

  it("puts +1 at the top and -1 at the bottom", () => {
    const points = tracePoints([1, -1], 100, 140);
    expect(points[0][1]).toBe(0);
    expect(points[1][1]).toBe(140);
  });

  it("clamps overshooting samples to the plot box", () => {
    const points = tracePoints([3.5, -2.0, 0.0], 300, 100);
    expect(points[0][1]).toBe(0);
    expect(points[1][1]).toBe(100);
    expect(points[2][1]).toBe(50);
  });

  it("handles empty and single-sample previews", () => {
    expect(tracePoints([], 100, 100)).toEqual([]);
    expect(tracePoints([0.5], 100, 100)).toEqual([[0, 25]]);
  });
});
