// SVG scatter plot of the 2-D ingredient-similarity embedding.
// Pure string renderer: server coordinates in, markup out. The only
// arithmetic here is viewport projection (scaling and panning for display).

import type { EmbeddingPointJson } from "./types.js";
import type { Viewport } from "./store.js";
import { escapeHtml } from "./render-util.js";

const PALETTE = [
  "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
  "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
];

export interface ScatterOptions {
  width: number;
  height: number;
  anchor: number | null;
}

export function colorKeyOf(point: EmbeddingPointJson, colorBy: "category" | "issue"): string {
  if (colorBy === "issue") return point.issue ?? "untagged";
  return point.category ?? "unknown";
}

export function legendEntries(
  points: EmbeddingPointJson[],
  colorBy: "category" | "issue",
): Array<{ key: string; color: string }> {
  const keys = [...new Set(points.map((p) => colorKeyOf(p, colorBy)))].sort();
  return keys.map((key, i) => ({ key, color: PALETTE[i % PALETTE.length] }));
}

export function renderScatter(
  points: EmbeddingPointJson[],
  viewport: Viewport,
  options: ScatterOptions,
): string {
  const { width, height } = options;
  if (points.length === 0) {
    return `<svg class="scatter" viewBox="0 0 ${width} ${height}"><text x="12" y="24">no points</text></svg>`;
  }
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const pad = 16;

  const colors = new Map(legendEntries(points, viewport.colorBy).map((e) => [e.key, e.color]));

  const project = (p: EmbeddingPointJson): [number, number] => {
    const nx = (p.x - minX) / spanX;
    const ny = (p.y - minY) / spanY;
    const cx = pad + nx * (width - 2 * pad);
    const cy = height - pad - ny * (height - 2 * pad);
    const zx = width / 2 + (cx - width / 2) * viewport.zoom + viewport.panX;
    const zy = height / 2 + (cy - height / 2) * viewport.zoom + viewport.panY;
    return [zx, zy];
  };

  const circles = points
    .map((p) => {
      const [cx, cy] = project(p);
      const key = colorKeyOf(p, viewport.colorBy);
      const isAnchor = options.anchor === p.product_id;
      const label = `#${p.product_id} ${p.brand ?? ""} ${p.name ?? ""} (${key})`;
      return (
        `<circle class="point${isAnchor ? " anchor" : ""}" data-action="pick-anchor" ` +
        `data-product-id="${p.product_id}" cx="${cx.toFixed(1)}" cy="${cy.toFixed(1)}" ` +
        `r="${isAnchor ? 7 : 4}" fill="${colors.get(key)}">` +
        `<title>${escapeHtml(label)}</title></circle>`
      );
    })
    .join("");

  return `<svg class="scatter" viewBox="0 0 ${width} ${height}" role="img">${circles}</svg>`;
}
