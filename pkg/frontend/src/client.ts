/** API access: one interface, two transports.
 *
 * HttpApiClient talks to a live /api/v1 service and passes real query
 * parameters. BundleClient reads the static tree written by the exporter;
 * that tree holds the default-query document per route, so parameterized
 * LO-pair queries are answered by selecting rows client-side (a selection,
 * never a recomputation).
 */

import type {
  ErrorDoc,
  FiltersDoc,
  HeatmapDoc,
  LoMatchesDoc,
  PairLosDoc,
  PairTopicsDoc,
  PairGradesDoc,
  TopicDoc,
} from "./types.js";

export interface ScopeQuery {
  cycle?: number | null;
  stream?: string | null;
  program?: string | null;
}

export interface LosQuery {
  topic?: number | null;
  grade?: number | null;
  minMatchPct?: number | null;
  page?: number;
  pageSize?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly doc: ErrorDoc | null,
    url: string,
  ) {
    super(doc ? `${status} ${doc.error}` : `${status} on ${url}`);
    this.name = "ApiError";
  }
}

export interface ApiClient {
  /** Bundle mode cannot re-scope the heatmap or re-gate by percentage. */
  readonly offline: boolean;
  filters(): Promise<FiltersDoc>;
  heatmap(scope: ScopeQuery): Promise<HeatmapDoc>;
  pairGrades(a: string, b: string): Promise<PairGradesDoc>;
  pairTopics(a: string, b: string): Promise<PairTopicsDoc>;
  pairLos(a: string, b: string, q: LosQuery): Promise<PairLosDoc>;
  topic(id: number): Promise<TopicDoc>;
  loMatches(code: string): Promise<LoMatchesDoc>;
}

/** The slice of fetch() the clients rely on; tests substitute file readers. */
export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchFn = (url: string) => Promise<ResponseLike>;

const defaultFetch: FetchFn = (url) => fetch(url);

async function getJson<T>(fetchFn: FetchFn, url: string): Promise<T> {
  let resp: ResponseLike;
  try {
    resp = await fetchFn(url);
  } catch (err) {
    throw new ApiError(0, null, `${url} (${String(err)})`);
  }
  if (!resp.ok) {
    let doc: ErrorDoc | null = null;
    try {
      doc = (await resp.json()) as ErrorDoc;
    } catch {
      doc = null;
    }
    throw new ApiError(resp.status, doc, url);
  }
  return (await resp.json()) as T;
}

export class HttpApiClient implements ApiClient {
  readonly offline = false;

  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchFn = defaultFetch,
  ) {
    this.base = base.replace(/\/+$/, "");
  }

  private url(path: string, params?: Record<string, unknown>): string {
    const qs = new URLSearchParams();
    for (const [key, value] of Object.entries(params ?? {})) {
      if (value !== null && value !== undefined) qs.set(key, String(value));
    }
    const tail = qs.toString();
    return `${this.base}${path}${tail ? "?" + tail : ""}`;
  }

  filters(): Promise<FiltersDoc> {
    return getJson(this.fetchFn, this.url("/filters"));
  }

  heatmap(scope: ScopeQuery): Promise<HeatmapDoc> {
    return getJson(this.fetchFn, this.url("/heatmap", {
      cycle: scope.cycle,
      stream: scope.stream,
      program: scope.program,
    }));
  }

  pairGrades(a: string, b: string): Promise<PairGradesDoc> {
    return getJson(this.fetchFn, this.url(`/pairs/${a}/${b}/grades`));
  }

  pairTopics(a: string, b: string): Promise<PairTopicsDoc> {
    return getJson(this.fetchFn, this.url(`/pairs/${a}/${b}/topics`));
  }

  pairLos(a: string, b: string, q: LosQuery): Promise<PairLosDoc> {
    return getJson(this.fetchFn, this.url(`/pairs/${a}/${b}/los`, {
      topic: q.topic,
      grade: q.grade,
      min_match_pct: q.minMatchPct,
      page: q.page,
      page_size: q.pageSize,
    }));
  }

  topic(id: number): Promise<TopicDoc> {
    return getJson(this.fetchFn, this.url(`/topics/${id}`));
  }

  loMatches(code: string): Promise<LoMatchesDoc> {
    return getJson(this.fetchFn, this.url(`/los/${code}/matches`));
  }
}

/** Selection half of the server's LO-pair query, applied to a fetched
 * default document. `pairCell` is the directed subject-level percentage
 * from the heatmap document; below minMatchPct the table empties, exactly
 * like the live gate. Exported so tests can pin it against the live API. */
export function selectRows(doc: PairLosDoc, q: LosQuery, pairCell: number): PairLosDoc {
  let rows = doc.rows;
  if (q.minMatchPct !== null && q.minMatchPct !== undefined && pairCell < q.minMatchPct) {
    rows = [];
  }
  if (q.topic !== null && q.topic !== undefined) {
    rows = rows.filter((r) => r.topic_id === q.topic);
  }
  if (q.grade !== null && q.grade !== undefined) {
    rows = rows.filter((r) => r.grade_a === q.grade);
  }
  const page = q.page ?? 1;
  const pageSize = q.pageSize ?? doc.page_size;
  const start = (page - 1) * pageSize;
  return {
    ...doc,
    filters: {
      topic: q.topic ?? null,
      grade: q.grade ?? null,
      min_match_pct: q.minMatchPct ?? null,
    },
    page,
    page_size: pageSize,
    total: rows.length,
    rows: rows.slice(start, start + pageSize),
  };
}

export class BundleClient implements ApiClient {
  readonly offline = true;
  private heatmapDoc: Promise<HeatmapDoc> | null = null;

  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchFn = defaultFetch,
  ) {
    this.base = base.replace(/\/+$/, "");
  }

  private doc<T>(rel: string): Promise<T> {
    return getJson(this.fetchFn, `${this.base}/${rel}.json`);
  }

  filters(): Promise<FiltersDoc> {
    return this.doc("filters");
  }

  heatmap(scope: ScopeQuery): Promise<HeatmapDoc> {
    // the bundle holds only the unscoped heatmap; the app disables scope
    // filters in offline mode rather than invent numbers
    if (scope.cycle != null || scope.stream != null || scope.program != null) {
      return Promise.reject(new ApiError(0, null, "scoped heatmap needs the live API"));
    }
    if (this.heatmapDoc === null) this.heatmapDoc = this.doc("heatmap");
    return this.heatmapDoc;
  }

  pairGrades(a: string, b: string): Promise<PairGradesDoc> {
    return this.doc(`pairs/${a}/${b}/grades`);
  }

  pairTopics(a: string, b: string): Promise<PairTopicsDoc> {
    return this.doc(`pairs/${a}/${b}/topics`);
  }

  async pairLos(a: string, b: string, q: LosQuery): Promise<PairLosDoc> {
    const doc = await this.doc<PairLosDoc>(`pairs/${a}/${b}/los`);
    const heat = await this.heatmap({});
    const cell = heat.cells[heat.subjects.indexOf(a)][heat.subjects.indexOf(b)];
    return selectRows(doc, q, cell);
  }

  topic(id: number): Promise<TopicDoc> {
    return this.doc(`topics/${id}`);
  }

  loMatches(code: string): Promise<LoMatchesDoc> {
    return this.doc(`los/${code}/matches`);
  }
}
