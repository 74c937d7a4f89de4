import { describe, expect, it } from "vitest";

import { ExplorerApi } from "../src/api.js";
import { buildScatterSpec, swapScatterAxes } from "../src/charts.js";
import { renderChart } from "../src/render.js";
import { mockFetch, statesFixture } from "./mockapi.js";

async function scatterOver(data = statesFixture(), highlight: string | null = null) {
  const api = new ExplorerApi("", mockFetch(data));
  const children = await api.children("country/bra", "State");
  const ids = children.map((c) => c.id);
  const xs = await api.points(ids, "var/fertility_rate");
  const ys = await api.points(ids, "var/population");
  return buildScatterSpec(
    children,
    xs.observations,
    ys.observations,
    "Total Fertility Rate",
    "Resident Population",
    highlight,
  );
}

describe("scatter", () => {
  it("27-state fixture with both variables plots 27 points", async () => {
    const spec = await scatterOver();
    expect(spec.points).toHaveLength(27);
    expect(spec.omitted).toHaveLength(0);
    expect(spec.coverageNote).toBe("27 of 27 places have both variables");
  });

  it("entities missing one variable are omitted and counted", async () => {
    const spec = await scatterOver(
      statesFixture({ dropFertilityFor: ["state/ac", "state/to"] }),
    );
    expect(spec.points).toHaveLength(25);
    expect(spec.omitted).toEqual(["state/ac", "state/to"]);
    expect(spec.coverageNote).toBe("25 of 27 places have both variables");
  });

  it("axis swap transposes the identical point set without refetch", async () => {
    const log: string[] = [];
    const data = statesFixture();
    const api = new ExplorerApi("", mockFetch(data, log));
    const children = await api.children("country/bra", "State");
    const ids = children.map((c) => c.id);
    const xs = await api.points(ids, "var/fertility_rate");
    const ys = await api.points(ids, "var/population");
    const spec = buildScatterSpec(
      children, xs.observations, ys.observations, "x", "y", null,
    );
    const fetchesBefore = log.length;
    const swapped = swapScatterAxes(spec);
    expect(log).toHaveLength(fetchesBefore);
    expect(swapped.xLabel).toBe("y");
    expect(swapped.yLabel).toBe("x");
    expect(swapped.points.map((p) => [p.entity, p.x, p.y])).toEqual(
      spec.points.map((p) => [p.entity, p.y, p.x]),
    );
  });

  it("highlighted entity is marked in the rendering", async () => {
    const spec = await scatterOver(statesFixture(), "state/al");
    const svg = renderChart(spec);
    expect(svg).toContain('class="dot highlighted"');
    expect(svg.match(/class="dot highlighted"/g)).toHaveLength(1);
    expect(svg.match(/<circle/g)).toHaveLength(27);
  });
});
