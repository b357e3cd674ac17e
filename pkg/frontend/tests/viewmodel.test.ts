import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import type { HeatmapDoc, PairGradesDoc, PairTopicsDoc } from "../src/types.js";
import {
  colorFor,
  formatPct,
  gradeGrid,
  heatmapGrid,
  topicBars,
} from "../src/viewmodel.js";

const BUNDLE = fileURLToPath(new URL("./fixtures/bundle", import.meta.url));

function doc<T>(rel: string): T {
  return JSON.parse(readFileSync(`${BUNDLE}/${rel}.json`, "utf-8")) as T;
}

describe("heatmapGrid", () => {
  const grid = heatmapGrid(doc<HeatmapDoc>("heatmap"));

  it("orders axes by the dendrogram leaves", () => {
    expect(grid.order).toEqual(["AAA", "BBB"]);
  });

  it("shows the asymmetric percentages with two decimals", () => {
    const at = (row: string, col: string) =>
      grid.cells[grid.order.indexOf(row)][grid.order.indexOf(col)];
    expect(at("AAA", "BBB").display).toBe("50.00");
    expect(at("BBB", "AAA").display).toBe("33.33");
    expect(at("BBB", "BBB").display).toBe("66.67");
  });

  it("falls back to the subject order without a dendrogram", () => {
    const heat = doc<HeatmapDoc>("heatmap");
    const grid2 = heatmapGrid({ ...heat, dendrogram: null });
    expect(grid2.order).toEqual(heat.subjects);
  });

  it("keeps cell values tied to row/col labels under reordering", () => {
    const heat = doc<HeatmapDoc>("heatmap");
    const reordered = heatmapGrid({
      ...heat,
      dendrogram: { leaf_order: ["BBB", "AAA"], merges: [] },
    });
    const first = reordered.cells[0][1]; // row BBB, col AAA
    expect(first.row).toBe("BBB");
    expect(first.display).toBe("33.33");
  });
});

describe("colorFor", () => {
  it("darkens monotonically with the percentage", () => {
    const light = (pct: number) =>
      Number(/ (\d+(?:\.\d+)?)%\)$/.exec(colorFor(pct).color)![1]);
    expect(light(0)).toBeGreaterThan(light(50));
    expect(light(50)).toBeGreaterThan(light(100));
  });

  it("flags dark cells so the text flips to white", () => {
    expect(colorFor(0).dark).toBe(false);
    expect(colorFor(100).dark).toBe(true);
  });

  it("clamps out-of-range input", () => {
    expect(colorFor(-5)).toEqual(colorFor(0));
    expect(colorFor(250)).toEqual(colorFor(100));
  });
});

describe("gradeGrid", () => {
  it("labels axes with the document's grades", () => {
    const grid = gradeGrid(doc<PairGradesDoc>("pairs/AAA/BBB/grades"));
    expect(grid.rows).toEqual([1, 2]);
    expect(grid.cols).toEqual([1, 2]);
    expect(grid.cells[0][0].display).toBe("100.00");
    expect(grid.cells[1][1].display).toBe("0.00");
  });
});

describe("topicBars", () => {
  it("sizes bars relative to the largest topic", () => {
    const bars = topicBars(doc<PairTopicsDoc>("pairs/AAA/BBB/topics"));
    expect(bars).toHaveLength(1);
    expect(bars[0].topicId).toBe(0);
    expect(bars[0].count).toBe(3);
    expect(bars[0].widthPct).toBe(100);
  });

  it("handles an empty histogram", () => {
    const empty: PairTopicsDoc = {
      run_id: "0".repeat(16),
      subject_a: "AAA",
      subject_b: "BBB",
      topics: [],
    };
    expect(topicBars(empty)).toEqual([]);
  });
});

describe("formatPct", () => {
  it("renders the API's two-decimal convention", () => {
    expect(formatPct(50)).toBe("50.00");
    expect(formatPct(33.33)).toBe("33.33");
    expect(formatPct(0)).toBe("0.00");
  });
});
