/**
 * Browser wiring: inputs update the selection state, the state drives
 * fetches, fetched data renders through the pure chart builders.  The
 * state lives in the URL query string, so links are shareable and the
 * back button restores views; stale responses are discarded by sequence
 * tokens.
 */

import { ExplorerApi, NodeSummary, VariableInfo } from "./api.js";
import {
  buildMapSpec,
  buildScatterSpec,
  buildTimelineSpec,
  GeometryFile,
  ScatterSpec,
  swapScatterAxes,
} from "./charts.js";
import { buildPreview, downloadEnabled, fetchDownload } from "./download.js";
import { RequestSequencer } from "./fetchseq.js";
import { resolveAndLoadPlace, selectPlace } from "./placeflow.js";
import { renderChart, renderEmpty } from "./render.js";
import {
  decodeState,
  encodeState,
  initialState,
  SelectionState,
  selectionProblems,
  ViewKind,
  VIEWS,
} from "./state.js";

const API_BASE = (window as unknown as { EXPLORER_API_BASE?: string }).EXPLORER_API_BASE ?? "";
const GEOMETRY_PATH = "geometry/states.json";

const api = new ExplorerApi(API_BASE);
const sequencer = new RequestSequencer();

let state: SelectionState = decodeState(window.location.search);
let knownVariables: VariableInfo[] = [];
let lastScatter: ScatterSpec | null = null;
let geometry: GeometryFile | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function pushState(next: SelectionState, replace = false): void {
  state = next;
  const query = `?${encodeState(state)}`;
  if (replace) history.replaceState(null, "", query);
  else history.pushState(null, "", query);
  void refresh();
}

async function loadGeometry(): Promise<GeometryFile> {
  if (!geometry) {
    const response = await fetch(GEOMETRY_PATH);
    geometry = (await response.json()) as GeometryFile;
  }
  return geometry;
}

function setStatus(message: string): void {
  el<HTMLParagraphElement>("status").textContent = message;
}

function renderCandidates(candidates: NodeSummary[]): void {
  const picker = el<HTMLUListElement>("candidates");
  picker.innerHTML = "";
  for (const candidate of candidates) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.textContent = `${candidate.name} (${candidate.type}, ${candidate.id})`;
    button.addEventListener("click", () => {
      void (async () => {
        const outcome = await selectPlace(api, state, candidate);
        if (outcome.kind === "loaded") {
          knownVariables = outcome.variables;
          picker.innerHTML = "";
          renderVariablePicker();
          pushState(outcome.state);
        }
      })();
    });
    item.appendChild(button);
    picker.appendChild(item);
  }
}

function renderVariablePicker(): void {
  const container = el<HTMLDivElement>("variables");
  container.innerHTML = "";
  for (const variable of knownVariables) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = variable.id;
    box.checked = state.variables.includes(variable.id);
    box.addEventListener("change", () => {
      const selected = state.variables.filter((v) => v !== variable.id);
      if (box.checked) selected.push(variable.id);
      pushState({ ...state, variables: selected.slice(-2) });
    });
    label.appendChild(box);
    label.append(` ${variable.name}${variable.unit ? ` (${variable.unit})` : ""}`);
    container.appendChild(label);
  }
}

function variableName(id: string): string {
  return knownVariables.find((v) => v.id === id)?.name ?? id;
}

async function refresh(): Promise<void> {
  const target = el<HTMLDivElement>("chart");
  for (const view of VIEWS) {
    el<HTMLButtonElement>(`view-${view}`).classList.toggle("active", view === state.view);
  }
  const problems = selectionProblems(state);
  if (problems.length) {
    target.innerHTML = renderEmpty({ kind: "empty", message: problems.join("; ") });
    return;
  }
  const place = state.place!;
  const token = sequencer.next("chart");
  try {
    if (state.view === "timeline") {
      const series = await api.series(place.id, state.variables[0]!);
      if (!sequencer.isCurrent("chart", token)) return;
      target.innerHTML = renderChart(buildTimelineSpec(series, variableName(state.variables[0]!)));
    } else if (state.view === "scatter") {
      const children = await api.children(place.id, state.childLevel);
      const ids = children.map((c) => c.id);
      const [xs, ys] = await Promise.all([
        api.points(ids, state.variables[0]!),
        api.points(ids, state.variables[1]!),
      ]);
      if (!sequencer.isCurrent("chart", token)) return;
      lastScatter = buildScatterSpec(
        children,
        xs.observations,
        ys.observations,
        variableName(state.variables[0]!),
        variableName(state.variables[1]!),
        state.highlight,
      );
      target.innerHTML = renderChart(lastScatter);
    } else if (state.view === "map") {
      const geo = await loadGeometry();
      const children = await api.children(place.id, state.childLevel);
      const points = await api.points(children.map((c) => c.id), state.variables[0]!);
      if (!sequencer.isCurrent("chart", token)) return;
      const codeOf = (entityId: string) =>
        entityId.split("/").pop()!.toUpperCase();
      const spec = buildMapSpec(
        geo,
        children,
        points.observations,
        codeOf,
        variableName(state.variables[0]!),
      );
      target.innerHTML = renderChart(spec, geo);
    } else if (state.view === "graph") {
      const triples = await api.triples(place.id, "out");
      if (!sequencer.isCurrent("chart", token)) return;
      const rows = triples
        .map(
          (t) =>
            `<tr><td>${t.predicate}</td><td>${t.object.kind}</td><td>${t.object.value}</td></tr>`,
        )
        .join("");
      target.innerHTML = `<table class="triples"><thead><tr><th>predicate</th><th>kind</th><th>object</th></tr></thead><tbody>${rows}</tbody></table>`;
    } else if (state.view === "download") {
      const rows = await buildPreview(api, state);
      if (!sequencer.isCurrent("chart", token)) return;
      const body = rows
        .map(
          (r) =>
            `<tr><td>${r.entity}</td><td>${r.variable}</td><td>${r.date}</td><td>${r.value}</td></tr>`,
        )
        .join("");
      const button = downloadEnabled(state)
        ? `<button id="download-button">Download CSV</button>`
        : `<button disabled>Download CSV</button>`;
      target.innerHTML =
        `<table class="preview"><thead><tr><th>entity</th><th>variable</th><th>date</th><th>value</th></tr></thead>` +
        `<tbody>${body}</tbody></table>${button}`;
      const trigger = document.getElementById("download-button");
      trigger?.addEventListener("click", () => void saveDownload());
    }
    setStatus("");
  } catch (error) {
    if (!sequencer.isCurrent("chart", token)) return;
    target.innerHTML = renderEmpty({ kind: "empty", message: String(error) });
  }
}

async function saveDownload(): Promise<void> {
  const { bytes, filename } = await fetchDownload(api, state);
  const blob = new Blob([bytes.buffer as ArrayBuffer], { type: "text/csv;charset=utf-8" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

function wireSearch(): void {
  el<HTMLFormElement>("search-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const query = el<HTMLInputElement>("search-input").value.trim();
    if (!query) return;
    void (async () => {
      const outcome = await resolveAndLoadPlace(api, state, { name: query });
      if (outcome.kind === "notFound") {
        setStatus(outcome.message);
      } else if (outcome.kind === "picker") {
        setStatus("Several places match; pick one:");
        renderCandidates(outcome.candidates);
      } else {
        knownVariables = outcome.variables;
        renderVariablePicker();
        el<HTMLUListElement>("candidates").innerHTML = "";
        setStatus("");
        pushState(outcome.state);
      }
    })();
  });
}

function wireViews(): void {
  for (const view of VIEWS) {
    el<HTMLButtonElement>(`view-${view}`).addEventListener("click", () => {
      pushState({ ...state, view: view as ViewKind });
    });
  }
  el<HTMLButtonElement>("swap-axes").addEventListener("click", () => {
    if (state.view === "scatter" && lastScatter) {
      lastScatter = swapScatterAxes(lastScatter);
      el<HTMLDivElement>("chart").innerHTML = renderChart(lastScatter);
      pushState({ ...state, variables: [...state.variables].reverse() }, true);
    }
  });
}

async function boot(): Promise<void> {
  wireSearch();
  wireViews();
  window.addEventListener("popstate", () => {
    state = decodeState(window.location.search);
    void (async () => {
      if (state.place) knownVariables = await api.variablesFor(state.place.id);
      renderVariablePicker();
      await refresh();
    })();
  });
  if (state.place) {
    knownVariables = await api.variablesFor(state.place.id);
    renderVariablePicker();
  }
  if (!window.location.search) {
    state = initialState();
    history.replaceState(null, "", `?${encodeState(state)}`);
  }
  await refresh();
}

void boot();
