/** Scenario editor: draft state, validation bookkeeping, save flow.
 *
 * The one hard rule: a draft with an unresolved validation message is
 * never submitted. Local type errors and the service's 400 issues land
 * in the same `validation` map, keyed by "name" or
 * "<checker id>.<param>", and saveDraft refuses while it is non-empty.
 */

import type { Client, SaveScenarioResult } from "./api.js";
import {
  defaultRaw,
  formatParamValue,
  parseParamInput,
  renderParamControls,
} from "./forms.js";
import { html, raw } from "./html.js";
import type {
  CheckerInfo,
  DraftChecker,
  Scenario,
  UiScenarioDraft,
  ValidationIssue,
} from "./types.js";

/** Fresh draft with every known checker present but disabled, params
 * prefilled with their schema defaults. */
export function newDraft(id: string, checkers: CheckerInfo[]): UiScenarioDraft {
  return {
    id,
    name: "",
    description: "",
    checkers: checkers.map((checker) => blankChecker(checker)),
    dirty: false,
    validation: {},
    conflict: null,
  };
}

function blankChecker(checker: CheckerInfo): DraftChecker {
  const params: Record<string, unknown> = {};
  const rawValues: Record<string, string> = {};
  for (const spec of checker.params) {
    params[spec.name] = spec.default;
    rawValues[spec.name] = defaultRaw(spec);
  }
  return { id: checker.id, enabled: false, severity: "warning", params, raw: rawValues };
}

/** Draft pre-loaded from a saved scenario (the re-edit path). Checkers
 * the scenario doesn't mention stay available but disabled. */
export function draftFromScenario(
  id: string,
  scenario: Scenario,
  checkers: CheckerInfo[],
): UiScenarioDraft {
  const draft = newDraft(id, checkers);
  draft.name = scenario.name;
  draft.description = scenario.description;
  for (const configured of scenario.checkers) {
    const row = draft.checkers.find((c) => c.id === configured.id);
    if (!row) continue;
    row.enabled = configured.enabled;
    row.severity = configured.severity;
    const schema = checkers.find((c) => c.id === configured.id)?.params ?? [];
    for (const [name, value] of Object.entries(configured.params)) {
      row.params[name] = value;
      const spec = schema.find((s) => s.name === name);
      row.raw[name] = spec ? formatParamValue(spec, value) : String(value);
    }
  }
  return draft;
}

export function setName(draft: UiScenarioDraft, name: string): void {
  draft.name = name;
  draft.dirty = true;
  if (name.trim() === "") {
    draft.validation["name"] = "name must not be empty";
  } else {
    delete draft.validation["name"];
  }
}

export function setDescription(draft: UiScenarioDraft, text: string): void {
  draft.description = text;
  draft.dirty = true;
}

export function setEnabled(
  draft: UiScenarioDraft,
  checkerId: string,
  enabled: boolean,
): void {
  const row = mustFind(draft, checkerId);
  row.enabled = enabled;
  draft.dirty = true;
}

/** Record an input-field edit. Bad text leaves the typed value as it
 * was, stores the message, and thereby blocks saving. */
export function setParam(
  draft: UiScenarioDraft,
  checkers: CheckerInfo[],
  checkerId: string,
  paramName: string,
  rawText: string,
): void {
  const row = mustFind(draft, checkerId);
  const spec = checkers
    .find((c) => c.id === checkerId)
    ?.params.find((p) => p.name === paramName);
  if (!spec) throw new Error(`unknown parameter ${checkerId}.${paramName}`);
  row.raw[paramName] = rawText;
  draft.dirty = true;
  const key = `${checkerId}.${paramName}`;
  const parsed = parseParamInput(spec, rawText);
  if (parsed.ok) {
    row.params[paramName] = parsed.value;
    delete draft.validation[key];
  } else {
    draft.validation[key] = parsed.message;
  }
}

export function canSave(draft: UiScenarioDraft): boolean {
  return Object.keys(draft.validation).length === 0 && draft.name.trim() !== "";
}

/** The scenario this draft stands for: enabled checkers only, in the
 * order the catalogue lists them. */
export function draftToScenario(draft: UiScenarioDraft): Scenario {
  return {
    name: draft.name,
    description: draft.description,
    checkers: draft.checkers
      .filter((row) => row.enabled)
      .map((row) => ({
        id: row.id,
        enabled: true,
        severity: row.severity,
        params: { ...row.params },
      })),
  };
}

/** Map the service's 400 issues onto draft fields. Issues naming a
 * checker param land on that control; the rest land on the form. */
export function applyServiceIssues(
  draft: UiScenarioDraft,
  issues: ValidationIssue[],
): void {
  for (const issue of issues) {
    if (issue.checker_id && issue.param) {
      draft.validation[`${issue.checker_id}.${issue.param}`] = issue.detail;
    } else if (issue.code === "empty-name" || issue.field === "id") {
      draft.validation["name"] = issue.detail;
    } else {
      draft.validation["form"] = issue.detail;
    }
  }
}

export interface SaveOutcome {
  saved: boolean;
  result?: SaveScenarioResult;
}

/** Submit the draft. Refuses outright while validation messages are
 * unresolved; applies returned 400 issues; records 409s for the
 * reload prompt. */
export async function saveDraft(
  client: Client,
  draft: UiScenarioDraft,
): Promise<SaveOutcome> {
  if (!canSave(draft)) {
    throw new Error("draft has unresolved validation messages");
  }
  const result = await client.putScenario(draft.id, draftToScenario(draft));
  if (result.kind === "invalid") {
    applyServiceIssues(draft, result.issues);
    return { saved: false, result };
  }
  if (result.kind === "conflict") {
    draft.conflict = result.detail;
    return { saved: false, result };
  }
  draft.dirty = false;
  draft.conflict = null;
  return { saved: true, result };
}

function mustFind(draft: UiScenarioDraft, checkerId: string): DraftChecker {
  const row = draft.checkers.find((c) => c.id === checkerId);
  if (!row) throw new Error(`draft has no checker ${checkerId}`);
  return row;
}

// --- view ---------------------------------------------------------------------

export function renderScenarioEditor(
  draft: UiScenarioDraft,
  checkers: CheckerInfo[],
): string {
  const rows = checkers.map((checker) => {
    const row = draft.checkers.find((c) => c.id === checker.id) ?? blankChecker(checker);
    return html`<section class="checker${row.enabled ? " enabled" : ""}" data-checker="${checker.id}">
      <header>
        <label>
          <input type="checkbox" data-enable="${checker.id}"${raw(row.enabled ? " checked" : "")}>
          <strong>${checker.display_name}</strong>
        </label>
        <span class="summary">${checker.summary}</span>
      </header>
      ${raw(renderParamControls(checker.id, checker.params, row.raw, draft.validation))}
    </section>`;
  });

  const nameError = draft.validation["name"];
  const formError = draft.validation["form"];
  return html`<form class="scenario-editor" data-scenario="${draft.id}">
    ${raw(
      draft.conflict
        ? html`<div class="conflict-banner" role="alert">
            Someone else is editing this scenario (${draft.conflict}).
            <button type="button" data-action="reload">Reload latest</button>
          </div>`
        : "",
    )}
    <label>
      Scenario name
      <input type="text" data-field="name" value="${draft.name}">
    </label>
    ${raw(nameError ? html`<p class="field-error">${nameError}</p>` : "")}
    <label>
      Description
      <input type="text" data-field="description" value="${draft.description}">
    </label>
    ${raw(rows.join(""))}
    ${raw(formError ? html`<p class="field-error">${formError}</p>` : "")}
    <button type="submit" data-action="save"${raw(
      canSave(draft) && draft.dirty ? "" : " disabled",
    )}>Save scenario</button>
  </form>`;
}
