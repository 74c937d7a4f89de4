/**
 * SVG rendering of chart specs.  Pure string builders: the DOM layer sets
 * innerHTML, tests assert on the markup.  Scales map data to pixels; the
 * numbers shown in tooltips and labels are the API values verbatim.
 */

import type {
  ChartSpec,
  EmptySpec,
  GeometryFile,
  MapSpec,
  ScatterSpec,
  TimelineSpec,
} from "./charts.js";

const WIDTH = 720;
const HEIGHT = 420;
const PAD = 48;

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function scale(value: number, min: number, max: number, lo: number, hi: number): number {
  if (max === min) return (lo + hi) / 2;
  return lo + ((value - min) / (max - min)) * (hi - lo);
}

export function renderEmpty(spec: EmptySpec): string {
  return (
    `<div class="empty-state" role="status">` +
    `<p>${escapeXml(spec.message)}</p>` +
    `<p class="hint">Pick another place, variable, or date range.</p>` +
    `</div>`
  );
}

export function renderTimeline(spec: TimelineSpec): string {
  const values = spec.points.map((p) => p.value);
  const min = Math.min(...values);
  const max = Math.max(...values);
  const xs = spec.points.map((_, i) =>
    spec.points.length === 1 ? WIDTH / 2 : scale(i, 0, spec.points.length - 1, PAD, WIDTH - PAD),
  );
  const ys = spec.points.map((p) => scale(p.value, min, max, HEIGHT - PAD, PAD));
  const path = xs.map((x, i) => `${i === 0 ? "M" : "L"}${x.toFixed(1)},${ys[i]!.toFixed(1)}`).join(" ");
  const markerClass = spec.remoteOrigin ? "point remote" : "point";
  const circles = spec.points
    .map(
      (p, i) =>
        `<circle class="${markerClass}" cx="${xs[i]!.toFixed(1)}" cy="${ys[i]!.toFixed(1)}" r="4">` +
        `<title>${escapeXml(`${p.date}: ${p.value} (${p.provenance})`)}</title></circle>`,
    )
    .join("");
  const legend = spec.remoteOrigin
    ? `<text class="legend remote" x="${PAD}" y="20">origin: ${escapeXml(spec.origin)}</text>`
    : `<text class="legend" x="${PAD}" y="20">origin: local</text>`;
  const labels = spec.points
    .map((p, i) => `<text class="tick" x="${xs[i]!.toFixed(1)}" y="${HEIGHT - 18}">${escapeXml(p.date)}</text>`)
    .join("");
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart timeline">` +
    legend +
    `<text class="axis-label y" x="12" y="${HEIGHT / 2}">${escapeXml(spec.yLabel)}</text>` +
    `<path class="series" d="${path}" fill="none"/>` +
    circles +
    labels +
    `</svg>`
  );
}

export function renderScatter(spec: ScatterSpec): string {
  if (spec.points.length === 0) {
    return renderEmpty({ kind: "empty", message: "No place has values for both variables." });
  }
  const xValues = spec.points.map((p) => p.x);
  const yValues = spec.points.map((p) => p.y);
  const xMin = Math.min(...xValues);
  const xMax = Math.max(...xValues);
  const yMin = Math.min(...yValues);
  const yMax = Math.max(...yValues);
  const circles = spec.points
    .map((p) => {
      const cx = scale(p.x, xMin, xMax, PAD, WIDTH - PAD);
      const cy = scale(p.y, yMin, yMax, HEIGHT - PAD, PAD);
      const klass = p.highlighted ? "dot highlighted" : "dot";
      return (
        `<circle class="${klass}" cx="${cx.toFixed(1)}" cy="${cy.toFixed(1)}" r="${p.highlighted ? 7 : 4}" data-entity="${escapeXml(p.entity)}">` +
        `<title>${escapeXml(`${p.name}: ${spec.xLabel}=${p.x}, ${spec.yLabel}=${p.y}`)}</title></circle>`
      );
    })
    .join("");
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart scatter">` +
    `<text class="axis-label x" x="${WIDTH / 2}" y="${HEIGHT - 8}">${escapeXml(spec.xLabel)}</text>` +
    `<text class="axis-label y" x="12" y="${HEIGHT / 2}">${escapeXml(spec.yLabel)}</text>` +
    circles +
    `<text class="coverage" x="${WIDTH - PAD}" y="20">${escapeXml(spec.coverageNote)}</text>` +
    `</svg>`
  );
}

export function renderMap(spec: MapSpec, geometry: GeometryFile): string {
  const bounds = new Map(geometry.regions.map((r) => [r.code, r]));
  const cells = spec.regions
    .map((region) => {
      const box = bounds.get(region.code);
      if (!box) return "";
      return (
        `<rect class="region" data-code="${escapeXml(region.code)}" x="${box.x}" y="${box.y}" ` +
        `width="${box.w}" height="${box.h}" fill="${region.color}">` +
        `<title>${escapeXml(region.tooltip)}</title></rect>` +
        `<text class="region-label" x="${box.x + box.w / 2}" y="${box.y + box.h / 2}">${escapeXml(region.code)}</text>`
      );
    })
    .join("");
  const legend =
    spec.min !== null && spec.max !== null
      ? `<text class="legend" x="8" y="16">${escapeXml(`${spec.label}: ${spec.min} to ${spec.max}`)}</text>`
      : `<text class="legend" x="8" y="16">${escapeXml(`${spec.label}: no data`)}</text>`;
  return `<svg viewBox="0 0 560 520" class="chart map">${legend}${cells}</svg>`;
}

export function renderChart(spec: ChartSpec, geometry?: GeometryFile): string {
  switch (spec.kind) {
    case "empty":
      return renderEmpty(spec);
    case "line":
      return renderTimeline(spec);
    case "scatter":
      return renderScatter(spec);
    case "choropleth":
      if (!geometry) throw new Error("map rendering needs geometry");
      return renderMap(spec, geometry);
  }
}
