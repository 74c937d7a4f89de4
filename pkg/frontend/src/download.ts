/**
 * The download tool: preview the selection, then save the server's CSV
 * bytes exactly as delivered.
 */

import type { ExplorerApi } from "./api.js";
import type { SelectionState } from "./state.js";

export interface PreviewRow {
  entity: string;
  variable: string;
  date: string;
  value: number;
}

export const PREVIEW_LIMIT = 20;

export function downloadEnabled(state: SelectionState): boolean {
  return state.place !== null && state.variables.length > 0;
}

/** First rows of the selection, assembled from series responses. */
export async function buildPreview(
  api: ExplorerApi,
  state: SelectionState,
): Promise<PreviewRow[]> {
  if (!downloadEnabled(state) || !state.place) return [];
  const rows: PreviewRow[] = [];
  for (const variable of [...state.variables].sort()) {
    if (rows.length >= PREVIEW_LIMIT) break;
    const series = await api.series(state.place.id, variable);
    for (const point of series.points) {
      if (state.dateRange?.from && point.date < state.dateRange.from) continue;
      if (state.dateRange?.to && point.date.slice(0, 4) > state.dateRange.to) continue;
      rows.push({
        entity: state.place.id,
        variable,
        date: point.date,
        value: point.value,
      });
      if (rows.length >= PREVIEW_LIMIT) break;
    }
  }
  return rows;
}

/** Fetch the CSV; the returned bytes must be saved without modification. */
export async function fetchDownload(
  api: ExplorerApi,
  state: SelectionState,
): Promise<{ bytes: Uint8Array; filename: string }> {
  if (!downloadEnabled(state) || !state.place) {
    throw new Error("download requires a place and at least one variable");
  }
  return api.download({
    entities: [state.place.id],
    variables: state.variables,
    from: state.dateRange?.from,
    to: state.dateRange?.to,
  });
}
