/** Rule-quality dashboard. Row order is exactly the service's
 * `ranking` array — the client looks rules up by id and never sorts
 * or recomputes a metric itself. */

import { html, raw } from "./html.js";
import type { EvaluationDoc, RatingEntry, RuleMetricsDoc } from "./types.js";

/** Workbooks that still block an evaluation: analyzed but unrated. */
export function findBlockers(
  workbookIds: string[],
  ratingsByWorkbook: Record<string, RatingEntry[]>,
): string[] {
  return workbookIds.filter((id) => (ratingsByWorkbook[id] ?? []).length === 0);
}

const METRICS = ["precision", "recall", "accuracy", "mcc"] as const;

function metricCell(rule: RuleMetricsDoc, metric: (typeof METRICS)[number]): string {
  const value = rule[metric];
  if (rule.undefined.includes(metric)) {
    return html`<td class="metric undefined-metric">${value}<abbr title="undefined for this sample; counted as 0">*</abbr></td>`;
  }
  return html`<td class="metric">${value}</td>`;
}

function ruleRow(evaluation: EvaluationDoc, checkerId: string): string {
  const rule = evaluation.rules.find((r) => r.checker_id === checkerId);
  if (!rule) {
    return "";
  }
  const matching = evaluation.cell_matching.find((m) => m.checker_id === checkerId);
  const metricCells = METRICS.map((metric) => metricCell(rule, metric));
  return html`<tr class="rule${rule.perfect ? " perfect" : ""}" data-checker="${rule.checker_id}">
    <td class="checker">
      <a href="#/report?filter=${encodeURIComponent(`checker=${rule.checker_id}`)}"
        data-action="filter-checker" data-checker="${rule.checker_id}">${rule.checker_id}</a>
      ${raw(rule.perfect ? html`<span class="badge perfect-badge" title="no false positives or negatives">perfect</span>` : "")}
    </td>
    <td class="confusion">${rule.tp}/${rule.fp}/${rule.fn}/${rule.tn}</td>
    ${raw(metricCells.join(""))}
    <td class="cells">${matching ? html`${matching.hits} hit, ${matching.misses} missed, ${matching.spurious} spurious` : "—"}</td>
  </tr>`;
}

export function renderBlockers(blockers: string[]): string {
  if (blockers.length === 0) {
    return "";
  }
  const items = blockers.map(
    (id) =>
      html`<li><a href="#/workbooks/${id}/ratings" data-action="rate" data-workbook="${id}">${id}</a></li>`,
  );
  return html`<div class="blockers" role="alert">
    <p>Evaluation needs a rating for every analyzed workbook. Still unrated:</p>
    <ul>${raw(items.join(""))}</ul>
  </div>`;
}

export function renderDashboard(
  runIds: string[],
  evaluation: EvaluationDoc,
): string {
  const rows = evaluation.ranking.map((checkerId) => ruleRow(evaluation, checkerId));
  const consensus = evaluation.consensus.map(
    (entry) => html`<li class="consensus ${entry.rating}">
      <span class="workbook">${entry.workbook_id}</span>
      <span class="verdict">${entry.rating}</span>
      <span class="votes">${entry.good_votes} good / ${entry.poor_votes} poor</span>
    </li>`,
  );
  return html`<div class="dashboard" data-runs="${runIds.join(",")}">
    <h2>Rule evaluation</h2>
    <p class="runs">Runs: ${runIds.join(", ")}</p>
    <table class="rules">
      <thead>
        <tr>
          <th>Rule</th><th>tp/fp/fn/tn</th>
          <th>precision</th><th>recall</th><th>accuracy</th><th>mcc</th>
          <th>error cells</th>
        </tr>
      </thead>
      <tbody>${raw(rows.join(""))}</tbody>
    </table>
    <h3>Expert consensus</h3>
    <ul class="consensus-list">${raw(consensus.join(""))}</ul>
  </div>`;
}
