/**
 * Place search flow: resolve free text against the registry, then load the
 * variables available for the resolved place.
 */

import type { ExplorerApi, NodeSummary, VariableInfo } from "./api.js";
import type { SelectionState } from "./state.js";

export type PlaceLoadOutcome =
  | { kind: "loaded"; state: SelectionState; variables: VariableInfo[] }
  | { kind: "picker"; candidates: NodeSummary[] }
  | { kind: "notFound"; message: string };

export async function resolveAndLoadPlace(
  api: ExplorerApi,
  state: SelectionState,
  query: { name?: string; level?: string; ancestor?: string; code?: string },
): Promise<PlaceLoadOutcome> {
  const result = await api.resolvePlace(query);
  if (result.kind === "notFound") {
    return { kind: "notFound", message: `Nothing matches "${query.name ?? query.code}"` };
  }
  if (result.kind === "ambiguous") {
    return { kind: "picker", candidates: result.candidates };
  }
  return selectPlace(api, state, result.place);
}

/** Used both for unique resolutions and for picks from the candidate list. */
export async function selectPlace(
  api: ExplorerApi,
  state: SelectionState,
  place: NodeSummary,
): Promise<PlaceLoadOutcome> {
  const variables = await api.variablesFor(place.id);
  const next: SelectionState = {
    ...state,
    place: { id: place.id, name: place.name ?? place.id, type: place.type ?? "" },
    variables: [],
    highlight: null,
  };
  return { kind: "loaded", state: next, variables };
}
