/** Pure presentation transforms. Every number shown in the UI is taken
 * verbatim from an API document; this layer only orders, formats to the
 * API's own two-decimal convention, and assigns colors.
 */

import type { HeatmapDoc, PairGradesDoc, PairTopicsDoc } from "./types.js";

export interface HeatCell {
  row: string;
  col: string;
  value: number;
  display: string;
  color: string;
  dark: boolean; // cell is dark enough to need light text
}

export function formatPct(value: number): string {
  return value.toFixed(2);
}

/** Single-hue ramp, light to dark; linear in lightness so equal percentage
 * steps read as equal shade steps. */
export function colorFor(pct: number): { color: string; dark: boolean } {
  const t = Math.max(0, Math.min(100, pct)) / 100;
  const lightness = 97 - t * 64; // 97% .. 33%
  return { color: `hsl(215 65% ${lightness.toFixed(1)}%)`, dark: lightness < 60 };
}

export interface HeatGrid {
  order: string[];
  cells: HeatCell[][];
}

/** Rows and columns follow the dendrogram leaf order when present. */
export function heatmapGrid(doc: HeatmapDoc): HeatGrid {
  const order = doc.dendrogram ? doc.dendrogram.leaf_order : doc.subjects;
  const index = new Map(doc.subjects.map((s, i) => [s, i]));
  const cells = order.map((row) =>
    order.map((col) => {
      const value = doc.cells[index.get(row)!][index.get(col)!];
      return { row, col, value, display: formatPct(value), ...colorFor(value) };
    }),
  );
  return { order, cells };
}

export interface GradeGrid {
  rows: number[];
  cols: number[];
  cells: HeatCell[][];
}

export function gradeGrid(doc: PairGradesDoc): GradeGrid {
  const cells = doc.grades_a.map((ga, i) =>
    doc.grades_b.map((gb, j) => {
      const value = doc.cells[i][j];
      return {
        row: String(ga),
        col: String(gb),
        value,
        display: formatPct(value),
        ...colorFor(value),
      };
    }),
  );
  return { rows: doc.grades_a, cols: doc.grades_b, cells };
}

export interface TopicBar {
  topicId: number;
  keywords: string;
  count: number;
  widthPct: number; // bar geometry relative to the largest topic
}

export function topicBars(doc: PairTopicsDoc): TopicBar[] {
  const max = doc.topics.reduce((m, t) => Math.max(m, t.count), 0);
  return doc.topics.map((t) => ({
    topicId: t.topic_id,
    keywords: t.keywords,
    count: t.count,
    widthPct: max === 0 ? 0 : (t.count / max) * 100,
  }));
}
