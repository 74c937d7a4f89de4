/**
 * Typed client over the platform's REST routing table.  The explorer talks
 * to nothing else; every number it plots arrived verbatim from here.
 */

export interface SeriesPoint {
  date: string;
  value: number;
  provenance: string;
}

export interface SeriesResponse {
  entity: string;
  variable: string;
  origin: string; // "local" | "remote:<name>" | "none"
  points: SeriesPoint[];
  warnings: string[];
}

export interface PointObservation {
  entity: string;
  date: string;
  value: number;
  unit: string | null;
  provenance: string;
}

export interface PointResponse {
  variable: string;
  date: string;
  observations: PointObservation[];
}

export interface NodeSummary {
  id: string;
  name: string | null;
  type: string | null;
}

export type ResolveResult =
  | { kind: "unique"; place: NodeSummary }
  | { kind: "ambiguous"; candidates: NodeSummary[] }
  | { kind: "notFound" };

export interface VariableInfo {
  id: string;
  name: string;
  unit: string | null;
}

export interface TripleRecord {
  subject: string;
  predicate: string;
  object: { kind: string; value: string };
}

export interface ApiError {
  status: number;
  code: string;
  message: string;
}

export class RequestFailed extends Error {
  constructor(public readonly error: ApiError) {
    super(`${error.code}: ${error.message}`);
  }
}

export type FetchFn = (url: string) => Promise<Response>;

async function getJson(fetchFn: FetchFn, url: string): Promise<unknown> {
  const response = await fetchFn(url);
  if (!response.ok) {
    const body = (await response.json()) as ApiError;
    throw new RequestFailed(body);
  }
  return response.json();
}

export class ExplorerApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchFn = (url) => fetch(url),
  ) {}

  private url(path: string, params: Record<string, string | undefined>): string {
    const search = new URLSearchParams();
    for (const [key, value] of Object.entries(params)) {
      if (value !== undefined) search.set(key, value);
    }
    const query = search.toString();
    return `${this.baseUrl}${path}${query ? `?${query}` : ""}`;
  }

  async resolvePlace(query: {
    name?: string;
    level?: string;
    ancestor?: string;
    code?: string;
  }): Promise<ResolveResult> {
    const url = this.url("/api/place/resolve", query);
    const response = await this.fetchFn(url);
    if (response.status === 404) return { kind: "notFound" };
    if (!response.ok) throw new RequestFailed((await response.json()) as ApiError);
    const body = (await response.json()) as NodeSummary | { candidates: NodeSummary[] };
    if ("candidates" in body) return { kind: "ambiguous", candidates: body.candidates };
    return { kind: "unique", place: body };
  }

  async variablesFor(entity: string): Promise<VariableInfo[]> {
    const body = (await getJson(
      this.fetchFn,
      this.url("/api/variables", { entity }),
    )) as { variables: VariableInfo[] };
    return body.variables;
  }

  async series(entity: string, variable: string): Promise<SeriesResponse> {
    return (await getJson(
      this.fetchFn,
      this.url("/api/observations/series", { entity, variable }),
    )) as SeriesResponse;
  }

  async points(
    entities: string[],
    variable: string,
    date: string = "LATEST",
  ): Promise<PointResponse> {
    return (await getJson(
      this.fetchFn,
      this.url("/api/observations/point", {
        entities: entities.join(","),
        variable,
        date,
      }),
    )) as PointResponse;
  }

  async children(placeId: string, level: string): Promise<NodeSummary[]> {
    const body = (await getJson(
      this.fetchFn,
      this.url(`/api/place/${placeId}/children`, { level }),
    )) as { children: NodeSummary[] };
    return body.children;
  }

  async triples(
    nodeId: string,
    direction: "out" | "in",
    predicate?: string,
  ): Promise<TripleRecord[]> {
    const body = (await getJson(
      this.fetchFn,
      this.url(`/api/node/${nodeId}/triples`, { direction, predicate }),
    )) as { triples: TripleRecord[] };
    return body.triples;
  }

  downloadUrl(params: {
    entities: string[];
    variables: string[];
    from?: string;
    to?: string;
  }): string {
    return this.url("/api/download", {
      entities: params.entities.join(","),
      variables: params.variables.join(","),
      from: params.from,
      to: params.to,
    });
  }

  /** Raw download bytes; callers must save them unmodified. */
  async download(params: {
    entities: string[];
    variables: string[];
    from?: string;
    to?: string;
  }): Promise<{ bytes: Uint8Array; filename: string }> {
    const response = await this.fetchFn(this.downloadUrl(params));
    if (!response.ok) throw new RequestFailed((await response.json()) as ApiError);
    const disposition = response.headers.get("content-disposition") ?? "";
    const match = /filename="?([^";]+)"?/.exec(disposition);
    const buffer = await response.arrayBuffer();
    return {
      bytes: new Uint8Array(buffer),
      filename: match?.[1] ?? "download.csv",
    };
  }
}
