/** Document shapes served by /api/v1 and mirrored by the static bundle. */

export interface SubjectEntry {
  code: string;
  name: string;
  type: string;
}

export interface FiltersDoc {
  run_id: string;
  cycles: number[];
  streams: string[];
  programs: string[];
  subjects: SubjectEntry[];
  grades: number[];
}

export interface Dendrogram {
  leaf_order: string[];
  merges: [number, number, number, number][];
}

export interface HeatmapDoc {
  run_id: string;
  subjects: string[];
  cells: number[][]; // row-major over `subjects`; percent of row matched in column
  dendrogram: Dendrogram | null;
  scope: { cycle: number | null; stream: string | null; program: string | null };
}

export interface PairGradesDoc {
  run_id: string;
  subject_a: string;
  subject_b: string;
  grades_a: number[];
  grades_b: number[];
  cells: number[][];
}

export interface TopicCount {
  topic_id: number;
  keywords: string;
  count: number;
}

export interface PairTopicsDoc {
  run_id: string;
  subject_a: string;
  subject_b: string;
  topics: TopicCount[];
}

export interface PairRow {
  code_a: string;
  code_b: string;
  text_a: string;
  text_b: string;
  grade_a: number;
  grade_b: number;
  topic_id: number;
  keywords: string;
}

export interface PairLosDoc {
  run_id: string;
  subject_a: string;
  subject_b: string;
  filters: { topic: number | null; grade: number | null; min_match_pct: number | null };
  page: number;
  page_size: number;
  total: number;
  rows: PairRow[];
}

export interface TopicDoc {
  run_id: string;
  topic_id: number;
  keywords: { term: string; score: number }[];
  members: { subject: string; grade: number; count: number }[];
  total: number;
}

export interface LoMatchesDoc {
  run_id: string;
  code: string;
  subject: string;
  topic_id: number;
  matches: { code: string; subject: string; grade: number; text: string }[];
}

export interface ErrorDoc {
  run_id: string;
  status: number;
  error: string;
}
