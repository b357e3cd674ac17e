/** ViewState and its URL-hash encoding.
 *
 * The whole view lives in location.hash so a reload (or a pasted link)
 * reproduces it exactly, including when the page is opened from a static
 * bundle without a server. Dependent selections clear in cascade: scope
 * changes drop the subject pair, pair changes drop topic/grade/page.
 */

import type { FiltersDoc } from "./types.js";

export interface ViewState {
  cycle: number | null;
  stream: string | null;
  program: string | null;
  pair: [string, string] | null;
  topic: number | null;
  grade: number | null;
  minMatchPct: number | null;
  page: number;
}

export const DEFAULT_VIEW: ViewState = {
  cycle: null,
  stream: null,
  program: null,
  pair: null,
  topic: null,
  grade: null,
  minMatchPct: null,
  page: 1,
};

export function encodeHash(state: ViewState): string {
  const qs = new URLSearchParams();
  if (state.cycle !== null) qs.set("cycle", String(state.cycle));
  if (state.stream !== null) qs.set("stream", state.stream);
  if (state.program !== null) qs.set("program", state.program);
  if (state.pair !== null) qs.set("pair", state.pair.join("~"));
  if (state.topic !== null) qs.set("topic", String(state.topic));
  if (state.grade !== null) qs.set("grade", String(state.grade));
  if (state.minMatchPct !== null) qs.set("min", String(state.minMatchPct));
  if (state.page !== 1) qs.set("page", String(state.page));
  // keep the pair separator readable; ~ is unreserved per RFC 3986
  const tail = qs.toString().replace(/%7E/g, "~");
  return tail ? "#" + tail : "";
}

function intOrNull(raw: string | null): number | null {
  if (raw === null || raw === "") return null;
  const n = Number(raw);
  return Number.isInteger(n) ? n : null;
}

export function decodeHash(hash: string): ViewState {
  const qs = new URLSearchParams(hash.replace(/^#/, ""));
  const rawPair = qs.get("pair");
  let pair: [string, string] | null = null;
  if (rawPair) {
    const parts = rawPair.split("~");
    if (parts.length === 2 && parts[0] && parts[1]) pair = [parts[0], parts[1]];
  }
  const min = intOrNull(qs.get("min"));
  const page = intOrNull(qs.get("page"));
  return {
    cycle: intOrNull(qs.get("cycle")),
    stream: qs.get("stream"),
    program: qs.get("program"),
    pair,
    topic: intOrNull(qs.get("topic")),
    grade: intOrNull(qs.get("grade")),
    minMatchPct: min !== null && min >= 0 && min <= 100 ? min : null,
    page: page !== null && page >= 1 ? page : 1,
  };
}

export type ViewPatch = Partial<ViewState>;

/** Apply a user selection with the dependency cascade. */
export function applyPatch(state: ViewState, patch: ViewPatch): ViewState {
  const next = { ...state, ...patch };
  const scopeChanged =
    next.cycle !== state.cycle ||
    next.stream !== state.stream ||
    next.program !== state.program;
  if (scopeChanged) {
    next.pair = "pair" in patch ? (patch.pair ?? null) : null;
  }
  const pairChanged =
    (next.pair === null) !== (state.pair === null) ||
    (next.pair !== null &&
      state.pair !== null &&
      (next.pair[0] !== state.pair[0] || next.pair[1] !== state.pair[1]));
  if (pairChanged) {
    if (!("topic" in patch)) next.topic = null;
    if (!("grade" in patch)) next.grade = null;
    if (!("page" in patch)) next.page = 1;
  }
  const tableChanged =
    next.topic !== state.topic ||
    next.grade !== state.grade ||
    next.minMatchPct !== state.minMatchPct;
  if (tableChanged && !("page" in patch)) next.page = 1;
  if (next.pair === null) {
    next.topic = null;
    next.grade = null;
    next.page = 1;
  }
  return next;
}

/** Drop selections that reference values absent from /filters. */
export function reconcile(state: ViewState, filters: FiltersDoc): ViewState {
  const subjects = new Set(filters.subjects.map((s) => s.code));
  const next = { ...state };
  if (next.cycle !== null && !filters.cycles.includes(next.cycle)) next.cycle = null;
  if (next.stream !== null && !filters.streams.includes(next.stream)) next.stream = null;
  if (next.program !== null && !filters.programs.includes(next.program)) next.program = null;
  if (next.pair !== null && !(subjects.has(next.pair[0]) && subjects.has(next.pair[1]))) {
    next.pair = null;
    next.topic = null;
    next.grade = null;
    next.page = 1;
  }
  if (next.grade !== null && !filters.grades.includes(next.grade)) next.grade = null;
  return next;
}
