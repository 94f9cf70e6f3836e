import { describe, expect, it } from "vitest";

import type { QuiverJson } from "../src/api.js";
import { computeLayout, truncateText } from "../src/layout.js";

const affine: QuiverJson = {
  n: 4,
  frozen: [3, 4],
  arrows: [[1, 2, 2], [2, 3, 2], [3, 4, 2], [3, 1, 1], [4, 2, 1]],
};

describe("computeLayout", () => {
  it("groups vertices into word rows", () => {
    const layout = computeLayout(affine, [1, 2, 1, 2]);
    const p = (k: number) => layout.get(k)!;
    expect(p(1).y).toBe(p(3).y); // row 1
    expect(p(2).y).toBe(p(4).y); // row 2
    expect(p(1).y).not.toBe(p(2).y);
    expect(p(3).x).toBeLessThan(p(1).x); // later positions sit further left
    expect(p(4).x).toBeLessThan(p(2).x);
  });

  it("normalizes into the unit square", () => {
    for (const rows of [[1, 2, 1, 2], null]) {
      for (const { x, y } of computeLayout(affine, rows).values()) {
        expect(x).toBeGreaterThanOrEqual(0);
        expect(x).toBeLessThanOrEqual(1);
        expect(y).toBeGreaterThanOrEqual(0);
        expect(y).toBeLessThanOrEqual(1);
      }
    }
  });

  it("falls back to a circle without row hints", () => {
    const layout = computeLayout(affine, null);
    const points = [...layout.values()];
    expect(new Set(points.map((p) => `${p.x},${p.y}`)).size).toBe(4);
  });

  it("handles a single vertex", () => {
    const single: QuiverJson = { n: 1, frozen: [1], arrows: [] };
    expect(computeLayout(single, [1]).get(1)).toEqual({ x: 0, y: 0 });
  });
});

describe("truncateText", () => {
  it("keeps short strings intact", () => {
    expect(truncateText("x1")).toBe("x1");
  });

  it("shortens long strings with an ellipsis", () => {
    const long = "(x1*x2 + x3*x4 + x5*x6 + x7)/x8";
    expect(truncateText(long, 10)).toBe("(x1*x2 + …");
    expect(truncateText(long, 10).length).toBe(10);
  });
});
