// Dual-line SVG charts, rendered as strings so they are testable without
// a DOM. Confirmed series are solid; what-if projections overlay dashed.

import type { PlayerSeries, SeriesPoint } from "./state.js";

export const CHART_WIDTH = 560;
export const CHART_HEIGHT = 150;
const MARGIN = 26;
const COLORS = { p1: "#1f6fb4", p2: "#c23b3b" };

export type Metric = "tmm" | "efficiencySmoothed" | "pLtm" | "mStm";

function extent(values: number[]): [number, number] {
  let lo = Math.min(0, ...values);
  let hi = Math.max(1, ...values);
  if (hi === lo) hi = lo + 1;
  return [lo, hi];
}

function polylinePoints(
  points: SeriesPoint[],
  metric: Metric,
  lo: number,
  hi: number,
  maxIndex: number,
): string {
  const innerW = CHART_WIDTH - 2 * MARGIN;
  const innerH = CHART_HEIGHT - 2 * MARGIN;
  return points
    .map((p) => {
      const x = MARGIN + (innerW * (p.pointIndex - 1)) / Math.max(1, maxIndex - 1);
      const y = MARGIN + innerH * (1 - (p[metric] - lo) / (hi - lo));
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
}

export function chartSvg(
  title: string,
  metric: Metric,
  series: PlayerSeries,
  projection: PlayerSeries | null,
): string {
  const all = [...series.p1, ...series.p2];
  const overlay = projection ? [...projection.p1, ...projection.p2] : [];
  const [lo, hi] = extent([...all, ...overlay].map((p) => p[metric]));
  const maxIndex = Math.max(1, ...all.map((p) => p.pointIndex), ...overlay.map((p) => p.pointIndex));

  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${CHART_WIDTH}" height="${CHART_HEIGHT}" viewBox="0 0 ${CHART_WIDTH} ${CHART_HEIGHT}">`,
    `<text x="${MARGIN}" y="16" font-size="12">${title}</text>`,
    `<rect x="${MARGIN}" y="${MARGIN}" width="${CHART_WIDTH - 2 * MARGIN}" height="${CHART_HEIGHT - 2 * MARGIN}" fill="none" stroke="#bbb"/>`,
  ];
  for (const key of ["p1", "p2"] as const) {
    const pts = polylinePoints(series[key], metric, lo, hi, maxIndex);
    if (pts) {
      parts.push(
        `<polyline class="series-${key}" fill="none" stroke="${COLORS[key]}" stroke-width="1.5" points="${pts}"/>`,
      );
    }
  }
  if (projection) {
    for (const key of ["p1", "p2"] as const) {
      const pts = polylinePoints(projection[key], metric, lo, hi, maxIndex);
      if (pts) {
        parts.push(
          `<polyline class="projection-${key}" fill="none" stroke="${COLORS[key]}" stroke-width="1.5" stroke-dasharray="5 4" opacity="0.6" points="${pts}"/>`,
        );
      }
    }
  }
  parts.push("</svg>");
  return parts.join("");
}

export const CHART_PANELS: Array<{ title: string; metric: Metric }> = [
  { title: "momentum (tmm)", metric: "tmm" },
  { title: "smoothed efficiency", metric: "efficiencySmoothed" },
  { title: "long-term probability", metric: "pLtm" },
  { title: "short-term momentum", metric: "mStm" },
];
