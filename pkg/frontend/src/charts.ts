/**
 * Chart specifications: pure descriptions of what to draw, computed from the
 * selection state and fetched API data.  No value arithmetic happens here
 * beyond positioning; every displayed number is an API value verbatim.
 */

import type { NodeSummary, PointObservation, SeriesPoint, SeriesResponse } from "./api.js";

export interface TimelinePoint {
  date: string;
  value: number;
  provenance: string;
}

export interface TimelineSpec {
  kind: "line";
  xLabel: string;
  yLabel: string;
  origin: string;
  /** true when the series was served by a remote commons instance */
  remoteOrigin: boolean;
  points: TimelinePoint[];
  warnings: string[];
}

export interface EmptySpec {
  kind: "empty";
  message: string;
}

export interface ScatterPoint {
  entity: string;
  name: string;
  x: number;
  y: number;
  highlighted: boolean;
}

export interface ScatterSpec {
  kind: "scatter";
  xLabel: string;
  yLabel: string;
  points: ScatterPoint[];
  /** entities dropped because one of the two variables has no value */
  omitted: string[];
  coverageNote: string;
}

export interface MapRegion {
  code: string;
  entity: string | null;
  name: string;
  value: number | null;
  color: string;
  tooltip: string;
}

export interface MapSpec {
  kind: "choropleth";
  label: string;
  min: number | null;
  max: number | null;
  regions: MapRegion[];
}

export type ChartSpec = TimelineSpec | ScatterSpec | MapSpec | EmptySpec;

export function buildTimelineSpec(
  series: SeriesResponse,
  variableName: string,
): TimelineSpec | EmptySpec {
  if (series.points.length === 0) {
    return {
      kind: "empty",
      message: `No observations for ${variableName} here.`,
    };
  }
  return {
    kind: "line",
    xLabel: "date",
    yLabel: variableName,
    origin: series.origin,
    remoteOrigin: series.origin.startsWith("remote:"),
    points: series.points.map((p: SeriesPoint) => ({
      date: p.date,
      value: p.value,
      provenance: p.provenance,
    })),
    warnings: series.warnings,
  };
}

export function buildScatterSpec(
  children: NodeSummary[],
  xPoints: PointObservation[],
  yPoints: PointObservation[],
  xLabel: string,
  yLabel: string,
  highlight: string | null,
): ScatterSpec {
  const names = new Map(children.map((c) => [c.id, c.name ?? c.id]));
  const xs = new Map(xPoints.map((o) => [o.entity, o.value]));
  const ys = new Map(yPoints.map((o) => [o.entity, o.value]));
  const points: ScatterPoint[] = [];
  const omitted: string[] = [];
  for (const child of children) {
    const x = xs.get(child.id);
    const y = ys.get(child.id);
    if (x === undefined || y === undefined) {
      omitted.push(child.id);
      continue;
    }
    points.push({
      entity: child.id,
      name: names.get(child.id) ?? child.id,
      x,
      y,
      highlighted: child.id === highlight,
    });
  }
  return {
    kind: "scatter",
    xLabel,
    yLabel,
    points,
    omitted,
    coverageNote: `${points.length} of ${children.length} places have both variables`,
  };
}

/** Transpose axes without refetching anything. */
export function swapScatterAxes(spec: ScatterSpec): ScatterSpec {
  return {
    ...spec,
    xLabel: spec.yLabel,
    yLabel: spec.xLabel,
    points: spec.points.map((p) => ({ ...p, x: p.y, y: p.x })),
  };
}

export interface GeometryFile {
  level: string;
  regions: { code: string; name: string; x: number; y: number; w: number; h: number }[];
}

const NEUTRAL_FILL = "#d7d7d7";

/** Linear interpolation between the scale's two endpoint colors. */
export function colorForFraction(t: number): string {
  const low = [0xdb, 0xea, 0xf7];
  const high = [0x08, 0x45, 0x94];
  const channel = (i: number) => {
    const lowBand = low[i] ?? 0;
    const highBand = high[i] ?? 0;
    return Math.round(lowBand + (highBand - lowBand) * t);
  };
  const hex = (n: number) => n.toString(16).padStart(2, "0");
  return `#${hex(channel(0))}${hex(channel(1))}${hex(channel(2))}`;
}

export function buildMapSpec(
  geometry: GeometryFile,
  children: NodeSummary[],
  observations: PointObservation[],
  codeOf: (entityId: string) => string,
  label: string,
): MapSpec {
  const valueByCode = new Map<string, { entity: string; value: number }>();
  for (const obs of observations) {
    valueByCode.set(codeOf(obs.entity), { entity: obs.entity, value: obs.value });
  }
  const values = observations.map((o) => o.value);
  const min = values.length ? Math.min(...values) : null;
  const max = values.length ? Math.max(...values) : null;
  const regions: MapRegion[] = geometry.regions.map((region) => {
    const hit = valueByCode.get(region.code);
    if (!hit || min === null || max === null) {
      return {
        code: region.code,
        entity: hit?.entity ?? null,
        name: region.name,
        value: null,
        color: NEUTRAL_FILL,
        tooltip: `${region.name}: no data`,
      };
    }
    const t = max === min ? 1 : (hit.value - min) / (max - min);
    return {
      code: region.code,
      entity: hit.entity,
      name: region.name,
      value: hit.value,
      color: colorForFraction(t),
      tooltip: `${region.name}: ${hit.value}`,
    };
  });
  return { kind: "choropleth", label, min, max, regions };
}
