import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { ExplorerApi } from "../src/api.js";
import { buildMapSpec, colorForFraction, GeometryFile } from "../src/charts.js";
import { renderChart } from "../src/render.js";
import { mockFetch, statesFixture } from "./mockapi.js";

const geometry = JSON.parse(
  readFileSync(new URL("../public/geometry/states.json", import.meta.url), "utf-8"),
) as GeometryFile;

const codeOf = (entityId: string) => entityId.split("/").pop()!.toUpperCase();

async function mapOver(data = statesFixture()) {
  const api = new ExplorerApi("", mockFetch(data));
  const children = await api.children("country/bra", "State");
  const points = await api.points(children.map((c) => c.id), "var/population");
  return buildMapSpec(geometry, children, points.observations, codeOf, "Resident Population");
}

describe("choropleth map", () => {
  it("extreme values take the scale's endpoint colors", async () => {
    const spec = await mapOver();
    const minRegion = spec.regions.find((r) => r.value === spec.min)!;
    const maxRegion = spec.regions.find((r) => r.value === spec.max)!;
    expect(minRegion.color).toBe(colorForFraction(0));
    expect(maxRegion.color).toBe(colorForFraction(1));
  });

  it("all-equal values collapse to a single color class", async () => {
    const data = statesFixture();
    for (const entity of Object.keys(data.observations)) {
      data.observations[entity]!["var/population"] = [["2021", 5]];
    }
    const spec = await mapOver(data);
    const colors = new Set(spec.regions.map((r) => r.color));
    expect(colors.size).toBe(1);
  });

  it("regions without data get neutral fill and a no-data tooltip", async () => {
    const data = statesFixture();
    delete data.observations["state/ac"]!["var/population"];
    const spec = await mapOver(data);
    const acre = spec.regions.find((r) => r.code === "AC")!;
    expect(acre.value).toBeNull();
    expect(acre.tooltip).toBe("Acre: no data");
    const withData = spec.regions.find((r) => r.code === "MG")!;
    expect(acre.color).not.toBe(withData.color);
  });

  it("renders one rect per region, keyed by place code", async () => {
    const spec = await mapOver();
    const svg = renderChart(spec, geometry);
    expect(svg.match(/<rect class="region"/g)).toHaveLength(27);
    expect(svg).toContain('data-code="MG"');
  });
});
