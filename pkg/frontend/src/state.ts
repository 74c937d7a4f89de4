/**
 * Selection state: what the user is looking at.
 *
 * The whole state is URL-encodable so explorations are shareable links and
 * back/forward navigation restores the exact view.
 */

export type ViewKind = "timeline" | "scatter" | "map" | "graph" | "download";

export interface PlaceRef {
  id: string;
  name: string;
  type: string;
}

export interface DateRange {
  from?: string;
  to?: string;
}

export interface SelectionState {
  place: PlaceRef | null;
  /** Selected variable ids; timeline/map use [0], scatter uses [0] (x) and [1] (y). */
  variables: string[];
  dateRange: DateRange | null;
  view: ViewKind;
  /** Entity highlighted in scatter plots. */
  highlight: string | null;
  /** Aggregation level for scatter/map views (children of the place). */
  childLevel: "State" | "Municipality";
}

export const VIEWS: ViewKind[] = ["timeline", "scatter", "map", "graph", "download"];

export function initialState(): SelectionState {
  return {
    place: null,
    variables: [],
    dateRange: null,
    view: "timeline",
    highlight: null,
    childLevel: "State",
  };
}

/** Variable-count rules per view: timeline/map one, scatter two. */
export function selectionProblems(state: SelectionState): string[] {
  const problems: string[] = [];
  if (!state.place) problems.push("no place selected");
  const n = state.variables.length;
  if ((state.view === "timeline" || state.view === "map") && n !== 1) {
    problems.push(`${state.view} view needs exactly 1 variable, got ${n}`);
  }
  if (state.view === "scatter" && n !== 2) {
    problems.push(`scatter view needs exactly 2 variables, got ${n}`);
  }
  if (state.view === "download" && n === 0) {
    problems.push("download needs at least 1 variable");
  }
  return problems;
}

export function encodeState(state: SelectionState): string {
  const params = new URLSearchParams();
  if (state.place) {
    params.set("place", state.place.id);
    params.set("placeName", state.place.name);
    params.set("placeType", state.place.type);
  }
  if (state.variables.length) params.set("vars", state.variables.join(","));
  if (state.dateRange?.from) params.set("from", state.dateRange.from);
  if (state.dateRange?.to) params.set("to", state.dateRange.to);
  params.set("view", state.view);
  if (state.highlight) params.set("highlight", state.highlight);
  params.set("level", state.childLevel);
  return params.toString();
}

export function decodeState(query: string): SelectionState {
  const params = new URLSearchParams(query);
  const state = initialState();
  const placeId = params.get("place");
  if (placeId) {
    state.place = {
      id: placeId,
      name: params.get("placeName") ?? placeId,
      type: params.get("placeType") ?? "",
    };
  }
  const vars = params.get("vars");
  if (vars) state.variables = vars.split(",").filter((v) => v.length > 0);
  const from = params.get("from") ?? undefined;
  const to = params.get("to") ?? undefined;
  if (from || to) state.dateRange = { from, to };
  const view = params.get("view");
  if (view && (VIEWS as string[]).includes(view)) state.view = view as ViewKind;
  state.highlight = params.get("highlight");
  const level = params.get("level");
  if (level === "State" || level === "Municipality") state.childLevel = level;
  return state;
}
