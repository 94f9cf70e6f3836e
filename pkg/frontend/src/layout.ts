/** Pure vertex-placement helpers shared by the SVG renderer and its tests. */

import type { QuiverJson } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

/** Place vertices by word row when hints exist, else on a circle.
 * Positions inside a row grow right to left, matching the convention that
 * later word positions sit further left. Coordinates land in [0, 1]². */
export function computeLayout(quiver: QuiverJson, rows: number[] | null): Map<number, Point> {
  const raw = new Map<number, Point>();
  if (rows && rows.length === quiver.n) {
    const counts = new Map<number, number>();
    for (let k = 1; k <= quiver.n; k++) {
      const row = rows[k - 1];
      const seen = (counts.get(row) ?? 0) + 1;
      counts.set(row, seen);
      raw.set(k, { x: -seen, y: row });
    }
  } else {
    for (let k = 1; k <= quiver.n; k++) {
      const angle = (2 * Math.PI * (k - 1)) / quiver.n;
      raw.set(k, { x: Math.cos(angle), y: Math.sin(angle) });
    }
  }
  return normalize(raw);
}

function normalize(points: Map<number, Point>): Map<number, Point> {
  const xs = [...points.values()].map((p) => p.x);
  const ys = [...points.values()].map((p) => p.y);
  const spanX = Math.max(...xs) - Math.min(...xs) || 1;
  const spanY = Math.max(...ys) - Math.min(...ys) || 1;
  const minX = Math.min(...xs);
  const minY = Math.min(...ys);
  const out = new Map<number, Point>();
  for (const [k, p] of points) {
    out.set(k, { x: (p.x - minX) / spanX, y: (p.y - minY) / spanY });
  }
  return out;
}

/** Shorten long Laurent expressions for the graph view; the detail panel
 * always shows the full text. */
export function truncateText(text: string, limit = 24): string {
  return text.length <= limit ? text : text.slice(0, limit - 1) + "…";
}
