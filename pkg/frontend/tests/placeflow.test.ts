import { describe, expect, it } from "vitest";

import { ExplorerApi } from "../src/api.js";
import { resolveAndLoadPlace } from "../src/placeflow.js";
import { initialState } from "../src/state.js";
import { mockFetch, statesFixture } from "./mockapi.js";

const data = statesFixture();
// two places sharing a name makes resolution ambiguous
data.places.push({ id: "mun/9900001", name: "State AC", type: "Municipality" });

describe("place search flow", () => {
  it("unique match sets the place and loads its variables", async () => {
    const api = new ExplorerApi("", mockFetch(data));
    const outcome = await resolveAndLoadPlace(api, initialState(), { name: "State MG" });
    expect(outcome.kind).toBe("loaded");
    if (outcome.kind !== "loaded") return;
    expect(outcome.state.place?.id).toBe("state/mg");
    expect(outcome.state.variables).toEqual([]); // selection reset
    expect(outcome.variables.map((v) => v.id)).toEqual([
      "var/fertility_rate",
      "var/population",
    ]);
  });

  it("ambiguous match yields a candidate picker", async () => {
    const api = new ExplorerApi("", mockFetch(data));
    const outcome = await resolveAndLoadPlace(api, initialState(), { name: "State AC" });
    expect(outcome.kind).toBe("picker");
    if (outcome.kind !== "picker") return;
    expect(outcome.candidates.map((c) => c.id)).toEqual(["state/ac", "mun/9900001"]);
  });

  it("no match reports a message and leaves state untouched", async () => {
    const api = new ExplorerApi("", mockFetch(data));
    const before = initialState();
    const outcome = await resolveAndLoadPlace(api, before, { name: "Atlantis" });
    expect(outcome.kind).toBe("notFound");
    expect(before).toEqual(initialState());
  });
});
