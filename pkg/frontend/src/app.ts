/** Dashboard wiring: hash-addressed ViewState drives fetches through an
 * ApiClient; responses render into fixed panel slots. Concurrent fetches
 * are allowed; anything stale (older navigation epoch or a different
 * run_id) is dropped on arrival.
 */

import { ApiError } from "./client.js";
import type { ApiClient } from "./client.js";
import {
  DEFAULT_VIEW,
  applyPatch,
  decodeHash,
  encodeHash,
  reconcile,
} from "./state.js";
import type { ViewPatch, ViewState } from "./state.js";
import type { FiltersDoc, HeatmapDoc } from "./types.js";
import {
  clearBanner,
  el,
  renderBanner,
  renderEmptyScope,
  renderError,
  renderFilterBar,
  renderGradePanel,
  renderHeatmap,
  renderPairHeading,
  renderPairTable,
  renderTopicPanel,
} from "./render.js";
import { gradeGrid, heatmapGrid, topicBars } from "./viewmodel.js";

export interface HashHost {
  get(): string;
  set(hash: string): void;
  onChange(listener: () => void): void;
}

export function windowHashHost(win: Window): HashHost {
  return {
    get: () => win.location.hash,
    set: (hash) => {
      if (win.location.hash !== hash) win.location.hash = hash;
    },
    onChange: (listener) => win.addEventListener("hashchange", listener),
  };
}

const PAGE_SIZE = 50;

export class Dashboard {
  private state: ViewState = { ...DEFAULT_VIEW };
  private filters: FiltersDoc | null = null;
  private runId: string | null = null;
  private epoch = 0;

  private readonly slots: {
    banner: HTMLElement;
    filters: HTMLElement;
    heatmap: HTMLElement;
    pairhead: HTMLElement;
    grades: HTMLElement;
    topics: HTMLElement;
    table: HTMLElement;
  };

  constructor(
    private readonly client: ApiClient,
    root: HTMLElement,
    private readonly hash: HashHost,
  ) {
    const slot = (name: string) => el("section", { class: `slot-${name}` });
    this.slots = {
      banner: slot("banner"),
      filters: slot("filters"),
      heatmap: slot("heatmap"),
      pairhead: slot("pairhead"),
      grades: slot("grades"),
      topics: slot("topics"),
      table: slot("table"),
    };
    const drill = el("div", { class: "drilldown" },
      [this.slots.grades, this.slots.topics]);
    root.replaceChildren(
      this.slots.banner, this.slots.filters, this.slots.heatmap,
      this.slots.pairhead, drill, this.slots.table,
    );
  }

  async start(): Promise<void> {
    this.hash.onChange(() => {
      const decoded = decodeHash(this.hash.get());
      if (encodeHash(decoded) !== encodeHash(this.state)) {
        this.state = decoded;
        void this.refresh();
      }
    });
    this.state = decodeHash(this.hash.get());
    await this.refresh();
  }

  /** Resolves once the most recent navigation has finished rendering. */
  settled(): Promise<void> {
    return this.lastRefresh;
  }

  private lastRefresh: Promise<void> = Promise.resolve();

  private refresh(): Promise<void> {
    this.lastRefresh = this.doRefresh();
    return this.lastRefresh;
  }

  /** One user action: cascade the patch, write the URL, refetch. */
  private apply(patch: ViewPatch): void {
    this.state = applyPatch(this.state, patch);
    this.hash.set(encodeHash(this.state));
    void this.refresh();
  }

  /** Accept a document only if it is still current. */
  private fresh(epoch: number, runId: string): boolean {
    if (epoch !== this.epoch) return false;
    if (this.runId === null) this.runId = runId;
    if (runId !== this.runId) {
      renderBanner(this.slots.banner,
        "snapshot changed underneath this view; reload the page");
      return false;
    }
    return true;
  }

  private async doRefresh(): Promise<void> {
    const epoch = ++this.epoch;
    try {
      if (this.filters === null) {
        const filters = await this.client.filters();
        if (!this.fresh(epoch, filters.run_id)) return;
        this.filters = filters;
      }
      const reconciled = reconcile(this.state, this.filters);
      if (encodeHash(reconciled) !== encodeHash(this.state)) {
        this.state = reconciled;
        this.hash.set(encodeHash(this.state));
      }
      clearBanner(this.slots.banner);
      this.renderFilters();
      await this.loadHeatmap(epoch);
      if (this.state.pair) {
        await this.loadDrilldown(epoch, this.state.pair[0], this.state.pair[1]);
      } else {
        this.slots.pairhead.replaceChildren();
        this.slots.grades.replaceChildren();
        this.slots.topics.replaceChildren();
        this.slots.table.replaceChildren();
      }
    } catch (err) {
      if (epoch !== this.epoch) return;
      this.renderFailure(err);
    }
  }

  private renderFilters(): void {
    if (!this.filters) return;
    renderFilterBar(this.slots.filters, this.filters, this.state,
      this.client.offline, {
        onCycle: (cycle) => this.apply({ cycle }),
        onStream: (stream) => this.apply({ stream }),
        onProgram: (program) => this.apply({ program }),
      });
  }

  private async loadHeatmap(epoch: number): Promise<void> {
    const doc: HeatmapDoc = await this.client.heatmap({
      cycle: this.state.cycle,
      stream: this.state.stream,
      program: this.state.program,
    });
    if (!this.fresh(epoch, doc.run_id)) return;
    if (doc.subjects.length === 0) {
      renderEmptyScope(this.slots.heatmap);
      return;
    }
    renderHeatmap(this.slots.heatmap, heatmapGrid(doc),
      (row, col) => this.apply({ pair: [row, col] }));
  }

  private async loadDrilldown(epoch: number, a: string, b: string): Promise<void> {
    const [grades, topics, los] = await Promise.all([
      this.client.pairGrades(a, b),
      this.client.pairTopics(a, b),
      this.client.pairLos(a, b, {
        topic: this.state.topic,
        grade: this.state.grade,
        minMatchPct: this.state.minMatchPct,
        page: this.state.page,
        pageSize: PAGE_SIZE,
      }),
    ]);
    for (const doc of [grades, topics, los]) {
      if (!this.fresh(epoch, doc.run_id)) return;
    }
    renderPairHeading(this.slots.pairhead, a, b, () => this.apply({ pair: null }));
    renderGradePanel(this.slots.grades, gradeGrid(grades), this.state.grade,
      (grade) => this.apply({ grade }));
    renderTopicPanel(this.slots.topics, topicBars(topics), this.state.topic,
      (topic) => this.apply({ topic }));
    renderPairTable(this.slots.table, los, {
      onTopic: (topic) => this.apply({ topic }),
      onMinMatch: (minMatchPct) => this.apply({ minMatchPct }),
      onPage: (page) => this.apply({ page }),
    });
  }

  private renderFailure(err: unknown): void {
    const message = err instanceof ApiError
      ? err.doc
        ? `request rejected: ${err.doc.error}`
        : `request failed: ${err.message}`
      : `unexpected error: ${String(err)}`;
    renderError(this.slots.heatmap, message, () => {
      this.filters = null;
      void this.refresh();
    });
  }
}
