/** Wire types mirroring the workbench service's JSON, plus the two
 * pieces of client-side state (scenario drafts, report view state).
 * Every numeric value displayed by the UI comes out of these wire
 * types untouched — the client never recomputes findings or metrics.
 */

export type ParamType = "int" | "decimal" | "bool" | "string" | "string-list";

export interface ParamInfo {
  name: string;
  type: ParamType;
  default: unknown;
  description: string;
}

export interface CheckerInfo {
  id: string;
  display_name: string;
  summary: string;
  params: ParamInfo[];
}

export type Severity = "info" | "warning" | "error";

export interface ScenarioChecker {
  id: string;
  enabled: boolean;
  severity: Severity;
  params: Record<string, unknown>;
}

export interface Scenario {
  name: string;
  description: string;
  checkers: ScenarioChecker[];
}

export interface ValidationIssue {
  code?: string;
  checker_id?: string;
  param?: string;
  field?: string;
  detail: string;
}

export interface CellAddress {
  sheet: number;
  column: number;
  row: number;
}

export interface FindingLocation {
  kind: "cell" | "range" | "sheet" | "workbook";
  cell?: CellAddress;
  end?: CellAddress;
  sheet?: number;
  text: string;
}

export interface FindingDoc {
  finding_id: string;
  checker_id: string;
  workbook_id: string;
  severity: Severity;
  location: FindingLocation;
  message: string;
  explanation: string;
  suggestion: string;
  related_cells: CellAddress[];
}

export interface ReportDoc {
  schema_version: number;
  run: {
    run_id: string;
    started_at: string;
    finished_at: string;
    scenario: Scenario;
    workbooks: { id: string; sheets: string[] }[];
    skipped_formulas: { workbook_id: string; cell: CellAddress; reason: string }[];
    checker_errors: { checker_id: string; workbook_id: string; detail: string }[];
  };
  group_by: "cell" | "checker" | "workbook";
  findings: FindingDoc[];
  groups: { label: string; finding_ids: string[] }[];
  totals: {
    count: number;
    by_checker: Record<string, number>;
    by_workbook: Record<string, number>;
  };
}

export interface RatingEntry {
  workbook_id: string;
  expert_id: string;
  rating: "good" | "poor";
  error_cells?: string[];
  notes?: string;
}

export interface RuleMetricsDoc {
  checker_id: string;
  tp: number;
  fp: number;
  fn: number;
  tn: number;
  precision: number;
  recall: number;
  accuracy: number;
  mcc: number;
  undefined: string[];
  perfect: boolean;
}

export interface EvaluationDoc {
  rules: RuleMetricsDoc[];
  cell_matching: { checker_id: string; hits: number; misses: number; spurious: number }[];
  ranking: string[];
  consensus: {
    workbook_id: string;
    rating: "good" | "poor" | "undecided";
    good_votes: number;
    poor_votes: number;
  }[];
}

// --- client-side state -------------------------------------------------------

/** One checker row in the editor. `raw` holds the literal input-field
 * text so invalid entries stay visible while their error shows. */
export interface DraftChecker {
  id: string;
  enabled: boolean;
  severity: Severity;
  params: Record<string, unknown>;
  raw: Record<string, string>;
}

/** Editable mirror of a Scenario. `validation` maps field keys
 * ("name", "<checker id>.<param>") to unresolved messages; a draft
 * with any entry there is never submitted. */
export interface UiScenarioDraft {
  id: string;
  name: string;
  description: string;
  checkers: DraftChecker[];
  dirty: boolean;
  validation: Record<string, string>;
  conflict: string | null;
}

export const GROUP_KEYS = ["by_cell", "by_checker", "by_workbook"] as const;
export type GroupKey = (typeof GROUP_KEYS)[number];

export interface UiReportViewState {
  runId: string;
  group: GroupKey;
  filters: string[];
  selectedFinding: string | null;
  comparisonRunId: string | null;
}
