/** DOM construction for the dashboard panels. No framework: each renderer
 * replaces the contents of its container and wires callbacks. Data-testid
 * attributes mark the pieces the tests assert on.
 */

import type { FiltersDoc, PairLosDoc } from "./types.js";
import type { ViewState } from "./state.js";
import type { GradeGrid, HeatGrid, TopicBar } from "./viewmodel.js";

type Child = Node | string;

export function el(
  tag: string,
  attrs: Record<string, string> = {},
  children: Child[] = [],
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  for (const child of children) {
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

function clear(container: HTMLElement): HTMLElement {
  container.replaceChildren();
  return container;
}

export interface FilterCallbacks {
  onCycle(cycle: number | null): void;
  onStream(stream: string | null): void;
  onProgram(program: string | null): void;
}

function select(
  label: string,
  testid: string,
  options: string[],
  current: string,
  disabled: boolean,
  onChange: (value: string) => void,
): HTMLElement {
  const node = el("select", { "data-testid": testid }) as HTMLSelectElement;
  node.append(new Option(`all ${label}s`, ""));
  for (const opt of options) node.append(new Option(opt, opt));
  node.value = current;
  node.disabled = disabled;
  node.addEventListener("change", () => onChange(node.value));
  return el("label", { class: "filter" }, [label + " ", node]);
}

export function renderFilterBar(
  container: HTMLElement,
  filters: FiltersDoc,
  state: ViewState,
  offline: boolean,
  cb: FilterCallbacks,
): void {
  const bar = el("div", { class: "filter-bar" });
  bar.append(
    select("cycle", "filter-cycle", filters.cycles.map(String),
      state.cycle === null ? "" : String(state.cycle), offline,
      (v) => cb.onCycle(v === "" ? null : Number(v))),
    select("stream", "filter-stream", filters.streams,
      state.stream ?? "", offline,
      (v) => cb.onStream(v === "" ? null : v)),
    select("program", "filter-program", filters.programs,
      state.program ?? "", offline,
      (v) => cb.onProgram(v === "" ? null : v)),
  );
  if (offline) {
    bar.append(el("span", { class: "note" },
      ["static bundle: scope filters need the live API"]));
  }
  clear(container).append(bar);
}

export function renderHeatmap(
  container: HTMLElement,
  grid: HeatGrid,
  onCell: (row: string, col: string) => void,
): void {
  const table = el("table", { class: "heatmap", "data-testid": "heatmap" });
  const head = el("tr", {}, [el("th")]);
  for (const col of grid.order) head.append(el("th", {}, [col]));
  table.append(head);
  for (let i = 0; i < grid.order.length; i++) {
    const tr = el("tr", {}, [el("th", {}, [grid.order[i]])]);
    for (const cell of grid.cells[i]) {
      const td = el("td", {
        "data-testid": `cell-${cell.row}-${cell.col}`,
        style: `background:${cell.color};color:${cell.dark ? "#fff" : "#1a1a2e"}`,
        title: `${cell.row} matched in ${cell.col}: ${cell.display}%`,
      }, [cell.display]);
      td.addEventListener("click", () => onCell(cell.row, cell.col));
      tr.append(td);
    }
    table.append(tr);
  }
  clear(container).append(table);
}

export function renderEmptyScope(container: HTMLElement): void {
  clear(container).append(
    el("p", { class: "empty", "data-testid": "empty-scope" },
      ["no subjects match filter"]),
  );
}

export function renderError(
  container: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  const button = el("button", { "data-testid": "retry" }, ["retry"]);
  button.addEventListener("click", onRetry);
  clear(container).append(
    el("div", { class: "error-panel", "data-testid": "error" },
      [el("p", {}, [message]), button]),
  );
}

export function renderBanner(container: HTMLElement, message: string): void {
  clear(container).append(
    el("div", { class: "banner", "data-testid": "banner" }, [message]),
  );
}

export function clearBanner(container: HTMLElement): void {
  clear(container);
}

export interface DrilldownCallbacks {
  onTopic(topic: number | null): void;
  onMinMatch(pct: number | null): void;
  onPage(page: number): void;
}

export function renderPairHeading(
  container: HTMLElement,
  a: string,
  b: string,
  onClear: () => void,
): void {
  const close = el("button", { class: "clear-pair", "data-testid": "clear-pair" }, ["back"]);
  close.addEventListener("click", onClear);
  clear(container).append(
    el("h2", { class: "pair-heading", "data-testid": "pair-heading" },
      [`${a} vs ${b} `, close]),
  );
}

export function renderGradePanel(
  container: HTMLElement,
  grid: GradeGrid,
  selected: number | null,
  onGrade: (grade: number | null) => void,
): void {
  const table = el("table", { class: "heatmap grades", "data-testid": "grade-heatmap" });
  const head = el("tr", {}, [el("th")]);
  for (const col of grid.cols) head.append(el("th", {}, [String(col)]));
  table.append(head);
  for (let i = 0; i < grid.rows.length; i++) {
    const grade = grid.rows[i];
    const mark = grade === selected ? " selected" : "";
    const tr = el("tr", {}, [el("th", {}, [String(grade)])]);
    for (const cell of grid.cells[i]) {
      const td = el("td", {
        class: "grade-cell" + mark,
        "data-testid": `grade-${cell.row}-${cell.col}`,
        style: `background:${cell.color};color:${cell.dark ? "#fff" : "#1a1a2e"}`,
      }, [cell.display]);
      td.addEventListener("click", () =>
        onGrade(grade === selected ? null : grade));
      tr.append(td);
    }
    table.append(tr);
  }
  clear(container).append(table);
}

export function renderTopicPanel(
  container: HTMLElement,
  bars: TopicBar[],
  selected: number | null,
  onTopic: (topic: number | null) => void,
): void {
  const list = el("div", { class: "topic-bars", "data-testid": "topic-bars" });
  for (const bar of bars) {
    const active = bar.topicId === selected;
    const row = el("div", {
      class: "topic-bar" + (active ? " selected" : ""),
      "data-testid": `topic-bar-${bar.topicId}`,
    }, [
      el("span", { class: "bar-label" }, [`${bar.topicId} [${bar.keywords}]`]),
      el("span", {
        class: "bar-fill",
        style: `width:${bar.widthPct.toFixed(1)}%`,
      }),
      el("span", { class: "bar-count" }, [String(bar.count)]),
    ]);
    row.addEventListener("click", () =>
      onTopic(active ? null : bar.topicId));
    list.append(row);
  }
  if (bars.length === 0) {
    list.append(el("p", { class: "empty" }, ["no shared topics"]));
  }
  clear(container).append(list);
}

export function renderPairTable(
  container: HTMLElement,
  doc: PairLosDoc,
  cb: DrilldownCallbacks,
): void {
  const wrap = el("div", { class: "pair-table" });

  const slider = el("input", {
    type: "range", min: "0", max: "100", step: "1",
    value: String(doc.filters.min_match_pct ?? 0),
    "data-testid": "min-match",
  }) as HTMLInputElement;
  slider.addEventListener("change", () => {
    const v = Number(slider.value);
    cb.onMinMatch(v === 0 ? null : v);
  });
  wrap.append(el("label", { class: "filter" },
    ["min match % ", slider, el("span", {}, [String(doc.filters.min_match_pct ?? 0)])]));

  const table = el("table", { class: "pairs", "data-testid": "pair-table" });
  table.append(el("tr", {}, [
    el("th", {}, [doc.subject_a]), el("th", {}, ["grade"]),
    el("th", {}, [doc.subject_b]), el("th", {}, ["grade"]),
    el("th", {}, ["topic"]),
  ]));
  for (const row of doc.rows) {
    table.append(el("tr", { class: "pair-row", "data-testid": "pair-row" }, [
      el("td", {}, [el("code", {}, [row.code_a]), " ", row.text_a]),
      el("td", {}, [String(row.grade_a)]),
      el("td", {}, [el("code", {}, [row.code_b]), " ", row.text_b]),
      el("td", {}, [String(row.grade_b)]),
      el("td", { title: row.keywords }, [String(row.topic_id)]),
    ]));
  }
  wrap.append(table);
  if (doc.rows.length === 0) {
    wrap.append(el("p", { class: "empty", "data-testid": "empty-table" },
      ["no pairs under the current filters"]));
  }

  const pages = Math.max(1, Math.ceil(doc.total / doc.page_size));
  const pager = el("div", { class: "pager" });
  const prev = el("button", { "data-testid": "page-prev" }, ["prev"]) as HTMLButtonElement;
  const next = el("button", { "data-testid": "page-next" }, ["next"]) as HTMLButtonElement;
  prev.disabled = doc.page <= 1;
  next.disabled = doc.page >= pages;
  prev.addEventListener("click", () => cb.onPage(doc.page - 1));
  next.addEventListener("click", () => cb.onPage(doc.page + 1));
  pager.append(prev,
    el("span", { "data-testid": "page-label" },
      [`page ${doc.page} of ${pages} (${doc.total} pairs)`]),
    next);
  wrap.append(pager);

  clear(container).append(wrap);
}
