import { describe, expect, it } from "vitest";

import { ExplorerApi } from "../src/api.js";
import { buildPreview, downloadEnabled, fetchDownload, PREVIEW_LIMIT } from "../src/download.js";
import { initialState, SelectionState } from "../src/state.js";
import { csvBytesFor, mockFetch, statesFixture } from "./mockapi.js";

const data = statesFixture();

function selection(): SelectionState {
  return {
    place: { id: "state/mg", name: "State MG", type: "State" },
    variables: ["var/population", "var/fertility_rate"],
    dateRange: null,
    view: "download",
    highlight: null,
    childLevel: "State",
  };
}

describe("download tool", () => {
  it("is disabled with an empty selection", () => {
    expect(downloadEnabled(initialState())).toBe(false);
    expect(downloadEnabled(selection())).toBe(true);
  });

  it("saved bytes equal the API response exactly", async () => {
    const api = new ExplorerApi("", mockFetch(data));
    const { bytes } = await fetchDownload(api, selection());
    const expected = csvBytesFor(
      data,
      ["state/mg"],
      ["var/population", "var/fertility_rate"],
    );
    expect(Array.from(bytes)).toEqual(Array.from(expected));
  });

  it("preview rows match the download's first rows", async () => {
    const api = new ExplorerApi("", mockFetch(data));
    const state = selection();
    const preview = await buildPreview(api, state);
    expect(preview.length).toBeLessThanOrEqual(PREVIEW_LIMIT);

    const { bytes } = await fetchDownload(api, state);
    const lines = new TextDecoder().decode(bytes).trim().split("\n").slice(1);
    const csvRows = lines.slice(0, preview.length).map((line) => {
      const cells = line.split(",");
      return {
        entity: cells[0],
        variable: cells[2],
        date: cells[3],
        value: Number(cells[4]),
      };
    });
    expect(preview).toEqual(csvRows);
  });

  it("honors the selected date range", async () => {
    const api = new ExplorerApi("", mockFetch(data));
    const state = { ...selection(), dateRange: { from: "2021", to: "2021" } };
    const { bytes } = await fetchDownload(api, state);
    const lines = new TextDecoder().decode(bytes).trim().split("\n").slice(1);
    expect(lines.length).toBeGreaterThan(0);
    expect(lines.every((line) => line.split(",")[3] === "2021")).toBe(true);
  });
});
