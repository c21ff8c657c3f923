/** Report browser: grouped/filtered findings with a detail pane.
 *
 * The view state knows the run id, one of exactly three group keys,
 * the active filters and the selected finding; every findings list it
 * shows is the service's answer for that state, re-fetched on change.
 * The run-to-run diff view is an extension beyond plain browsing (see
 * the README) built from two served reports — still no client-side
 * finding computation, only set difference over finding ids.
 */

import { cellLabel, html, raw } from "./html.js";
import type {
  FindingDoc,
  GroupKey,
  ReportDoc,
  UiReportViewState,
} from "./types.js";
import { GROUP_KEYS } from "./types.js";

export function newViewState(runId: string): UiReportViewState {
  return {
    runId,
    group: "by_checker",
    filters: [],
    selectedFinding: null,
    comparisonRunId: null,
  };
}

export function withGroup(state: UiReportViewState, group: string): UiReportViewState {
  if (!(GROUP_KEYS as readonly string[]).includes(group)) {
    throw new Error(`unknown group key ${group}`);
  }
  return { ...state, group: group as GroupKey, selectedFinding: null };
}

export function withFilters(
  state: UiReportViewState,
  filters: string[],
): UiReportViewState {
  return { ...state, filters: [...filters], selectedFinding: null };
}

/** Select a finding — only one that is actually in the displayed run. */
export function selectFinding(
  state: UiReportViewState,
  report: ReportDoc,
  findingId: string | null,
): UiReportViewState {
  if (findingId !== null && !report.findings.some((f) => f.finding_id === findingId)) {
    return state;
  }
  return { ...state, selectedFinding: findingId };
}

export function withComparison(
  state: UiReportViewState,
  comparisonRunId: string | null,
): UiReportViewState {
  return { ...state, comparisonRunId };
}

export interface FindingsDiff {
  added: FindingDoc[];
  removed: FindingDoc[];
}

/** What changed between two runs, by stable finding id. */
export function diffFindings(previous: ReportDoc, next: ReportDoc): FindingsDiff {
  const before = new Map(previous.findings.map((f) => [f.finding_id, f]));
  const after = new Map(next.findings.map((f) => [f.finding_id, f]));
  return {
    added: next.findings.filter((f) => !before.has(f.finding_id)),
    removed: previous.findings.filter((f) => !after.has(f.finding_id)),
  };
}

// --- view ---------------------------------------------------------------------

function sheetsOf(report: ReportDoc, workbookId: string): string[] {
  return report.run.workbooks.find((w) => w.id === workbookId)?.sheets ?? [];
}

function findingRow(finding: FindingDoc, selected: boolean): string {
  return html`<li class="finding${selected ? " selected" : ""}" data-finding="${finding.finding_id}">
    <span class="severity ${finding.severity}">${finding.severity}</span>
    <span class="place">${finding.workbook_id} ${finding.location.text}</span>
    <span class="message">${finding.message}</span>
  </li>`;
}

export function renderFindingDetail(report: ReportDoc, finding: FindingDoc): string {
  const sheets = sheetsOf(report, finding.workbook_id);
  const related = finding.related_cells.map(
    (address) => html`<li>${cellLabel(sheets, address)}</li>`,
  );
  return html`<aside class="finding-detail" data-finding="${finding.finding_id}">
    <h3>${finding.message}</h3>
    <p class="explanation">${finding.explanation}</p>
    <p class="suggestion">${finding.suggestion}</p>
    ${raw(
      related.length > 0
        ? html`<h4>Related cells</h4><ul class="related">${raw(related.join(""))}</ul>`
        : "",
    )}
  </aside>`;
}

export function renderReportBrowser(
  state: UiReportViewState,
  report: ReportDoc,
): string {
  const groupOptions = GROUP_KEYS.map(
    (key) =>
      html`<option value="${key}"${raw(key === state.group ? " selected" : "")}>${key}</option>`,
  );
  const byId = new Map(report.findings.map((f) => [f.finding_id, f]));
  const groups = report.groups.map((group) => {
    const rows = group.finding_ids
      .map((id) => byId.get(id))
      .filter((f): f is FindingDoc => f !== undefined)
      .map((f) => findingRow(f, f.finding_id === state.selectedFinding));
    return html`<section class="group">
      <h3>${group.label} <span class="count">(${group.finding_ids.length})</span></h3>
      <ul>${raw(rows.join(""))}</ul>
    </section>`;
  });
  const selected = state.selectedFinding ? byId.get(state.selectedFinding) : undefined;
  return html`<div class="report-browser" data-run="${report.run.run_id}">
    <header>
      <h2>Run ${report.run.run_id}</h2>
      <p class="scenario-name">scenario: ${report.run.scenario.name}</p>
      <label>Group by <select data-action="group">${raw(groupOptions.join(""))}</select></label>
      <input type="text" data-action="filters" placeholder="checker=… severity=…"
        value="${state.filters.join(" ")}">
      <button type="button" data-action="rerun">Re-run with edited scenario</button>
      <span class="total-count">${report.totals.count} findings</span>
    </header>
    ${raw(
      report.findings.length === 0
        ? html`<p class="empty">No violations.</p>`
        : groups.join(""),
    )}
    ${raw(selected ? renderFindingDetail(report, selected) : "")}
    ${raw(
      report.run.skipped_formulas.length > 0
        ? html`<p class="skipped">Skipped formulas: ${report.run.skipped_formulas.length}</p>`
        : "",
    )}
  </div>`;
}

export function renderNotFound(runId: string): string {
  return html`<div class="report-missing">
    <p>Run ${runId} was not found — it may have been deleted.</p>
    <a href="#/runs">Back to the run list</a>
  </div>`;
}

/** Diff view for the refinement loop: what a scenario edit added and
 * removed relative to the prior run. */
export function renderDiff(previous: ReportDoc, next: ReportDoc): string {
  const diff = diffFindings(previous, next);
  const section = (title: string, cls: string, findings: FindingDoc[]) =>
    html`<section class="${cls}">
      <h3>${title} <span class="count">(${findings.length})</span></h3>
      <ul>${raw(findings.map((f) => findingRow(f, false)).join(""))}</ul>
    </section>`;
  return html`<div class="run-diff" data-prev="${previous.run.run_id}" data-next="${next.run.run_id}">
    ${raw(section("New findings", "added", diff.added))}
    ${raw(section("Resolved findings", "removed", diff.removed))}
  </div>`;
}
