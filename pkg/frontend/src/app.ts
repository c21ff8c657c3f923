/** Browser bootstrap: hash routing plus event delegation over the
 * pure view modules. Everything interesting lives in those modules;
 * this file only moves strings between the DOM and the client.
 */

import { ApiError, createClient, errorMessage } from "./api.js";
import type { Client } from "./api.js";
import { findBlockers, renderBlockers, renderDashboard } from "./dashboard.js";
import { html, raw } from "./html.js";
import { buildRatingEntry, renderRatingForm } from "./ratings.js";
import {
  newViewState,
  renderDiff,
  renderNotFound,
  renderReportBrowser,
  selectFinding,
  withFilters,
  withGroup,
} from "./reportBrowser.js";
import {
  draftFromScenario,
  newDraft,
  renderScenarioEditor,
  saveDraft,
  setDescription,
  setEnabled,
  setName,
  setParam,
} from "./scenarioEditor.js";
import type {
  CheckerInfo,
  RatingEntry,
  ReportDoc,
  UiReportViewState,
  UiScenarioDraft,
} from "./types.js";

function baseUrl(): string {
  const meta = document.querySelector('meta[name="workbench-base"]');
  return meta?.getAttribute("content") ?? "";
}

const client: Client = createClient(baseUrl());

let checkers: CheckerInfo[] = [];
const drafts = new Map<string, UiScenarioDraft>();
let reportState: UiReportViewState | null = null;
let currentReport: ReportDoc | null = null;
let ratingError = "";

function root(): HTMLElement {
  const el = document.getElementById("app");
  if (!el) throw new Error("missing #app element");
  return el;
}

function show(fragment: string): void {
  root().innerHTML = fragment;
}

function renderError(message: string): string {
  return html`<p class="error" role="alert">${message}</p>`;
}

// --- routes -------------------------------------------------------------------

async function renderHome(): Promise<string> {
  const [scenarios, workbooks, runs] = await Promise.all([
    client.listScenarios(),
    client.listWorkbooks(),
    client.listRuns(),
  ]);
  const scenarioItems = scenarios.map(
    (id) => html`<li><a href="#/scenarios/${id}">${id}</a></li>`,
  );
  const workbookItems = workbooks.map(
    (id) => html`<li><label><input type="checkbox" data-run-workbook="${id}"> ${id}</label>
      <a href="#/workbooks/${id}/ratings">rate</a></li>`,
  );
  const runItems = runs.map(
    (id) => html`<li><label><input type="checkbox" data-eval-run="${id}"> </label>
      <a href="#/runs/${id}">${id}</a></li>`,
  );
  const scenarioOptions = scenarios.map((id) => html`<option value="${id}">${id}</option>`);
  return html`<div class="home">
    <section>
      <h2>Scenarios</h2>
      <ul>${raw(scenarioItems.join(""))}</ul>
      <input type="text" data-field="new-scenario" placeholder="scenario id">
      <button type="button" data-action="new-scenario">New scenario</button>
    </section>
    <section>
      <h2>Workbooks</h2>
      <ul>${raw(workbookItems.join(""))}</ul>
      <input type="file" data-action="upload">
    </section>
    <section>
      <h2>Runs</h2>
      <label>Scenario <select data-field="run-scenario">${raw(scenarioOptions.join(""))}</select></label>
      <button type="button" data-action="create-run">Analyze checked workbooks</button>
      <ul>${raw(runItems.join(""))}</ul>
      <button type="button" data-action="evaluate">Evaluate checked runs</button>
    </section>
  </div>`;
}

async function renderScenarioRoute(id: string): Promise<string> {
  let draft = drafts.get(id);
  if (!draft) {
    try {
      const scenario = await client.getScenario(id);
      draft = draftFromScenario(id, scenario, checkers);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        draft = newDraft(id, checkers);
      } else {
        throw err;
      }
    }
    drafts.set(id, draft);
  }
  return renderScenarioEditor(draft, checkers);
}

async function renderRunRoute(runId: string): Promise<string> {
  if (!reportState || reportState.runId !== runId) {
    reportState = newViewState(runId);
  }
  try {
    currentReport = await client.getRun(runId, reportState.group, reportState.filters);
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      return renderNotFound(runId);
    }
    throw err;
  }
  return renderReportBrowser(reportState, currentReport);
}

async function renderRatingsRoute(workbookId: string): Promise<string> {
  const existing = await client.getRatings(workbookId);
  return renderRatingForm(workbookId, existing, ratingError || undefined);
}

async function renderDashboardRoute(runIdsCsv: string): Promise<string> {
  const runIds = runIdsCsv.split(",").filter((id) => id.length > 0);
  const reports = await Promise.all(runIds.map((id) => client.getRun(id)));
  const workbookIds = [
    ...new Set(reports.flatMap((report) => report.run.workbooks.map((w) => w.id))),
  ];
  const ratingsByWorkbook: Record<string, RatingEntry[]> = {};
  for (const workbookId of workbookIds) {
    ratingsByWorkbook[workbookId] = await client.getRatings(workbookId);
  }
  const blockers = findBlockers(workbookIds, ratingsByWorkbook);
  if (blockers.length > 0) {
    return renderBlockers(blockers);
  }
  const evaluation = await client.getEvaluation(runIds);
  return renderDashboard(runIds, evaluation);
}

async function renderDiffRoute(prevId: string, nextId: string): Promise<string> {
  const [previous, next] = await Promise.all([
    client.getRun(prevId),
    client.getRun(nextId),
  ]);
  return renderDiff(previous, next);
}

async function route(): Promise<string> {
  const hash = window.location.hash.replace(/^#\/?/, "");
  const parts = hash.split("/").map(decodeURIComponent);
  const head = parts[0] ?? "";
  if (head === "" || head === "home") return renderHome();
  if (head === "scenarios" && parts[1]) return renderScenarioRoute(parts[1]);
  if (head === "runs" && parts[1]) return renderRunRoute(parts[1]);
  if (head === "workbooks" && parts[1] && parts[2] === "ratings") {
    return renderRatingsRoute(parts[1]);
  }
  if (head === "dashboard" && parts[1]) return renderDashboardRoute(parts[1]);
  if (head === "diff" && parts[1] && parts[2]) return renderDiffRoute(parts[1], parts[2]);
  return renderHome();
}

async function rerender(): Promise<void> {
  try {
    show(await route());
  } catch (err) {
    const message =
      err instanceof ApiError ? errorMessage(err.status, err.body) : String(err);
    show(renderError(message));
  }
}

// --- event wiring -------------------------------------------------------------

function currentDraft(): UiScenarioDraft | null {
  const form = document.querySelector("form.scenario-editor");
  const id = form?.getAttribute("data-scenario");
  return id ? (drafts.get(id) ?? null) : null;
}

function fieldValue(scope: ParentNode, selector: string): string {
  const el = scope.querySelector(selector);
  if (el instanceof HTMLInputElement || el instanceof HTMLTextAreaElement) {
    return el.value;
  }
  if (el instanceof HTMLSelectElement) return el.value;
  return "";
}

function checkedValues(attribute: string): string[] {
  return [...document.querySelectorAll(`input[${attribute}]`)]
    .filter((el): el is HTMLInputElement => el instanceof HTMLInputElement && el.checked)
    .map((el) => el.getAttribute(attribute) ?? "")
    .filter((v) => v.length > 0);
}

async function handleUpload(input: HTMLInputElement): Promise<void> {
  const file = input.files?.[0];
  if (!file) return;
  const bytes = new Uint8Array(await file.arrayBuffer());
  await client.uploadWorkbook(file.name, bytes);
  await rerender();
}

async function handleCreateRun(): Promise<void> {
  const scenarioId = fieldValue(document, 'select[data-field="run-scenario"]');
  const workbookIds = checkedValues("data-run-workbook");
  const { run_id } = await client.createRun(scenarioId, workbookIds);
  window.location.hash = `#/runs/${run_id}`;
}

async function handleSaveScenario(draft: UiScenarioDraft): Promise<void> {
  const outcome = await saveDraft(client, draft);
  if (outcome.saved) {
    window.location.hash = "#/";
  } else {
    await rerender();
  }
}

async function handleSaveRating(form: HTMLFormElement): Promise<void> {
  const workbookId = form.getAttribute("data-workbook") ?? "";
  const built = buildRatingEntry({
    workbookId,
    expertId: fieldValue(form, '[data-field="expert_id"]'),
    rating: fieldValue(form, '[data-field="rating"]'),
    errorCellsText: fieldValue(form, '[data-field="error_cells"]'),
    notes: fieldValue(form, '[data-field="notes"]'),
  });
  if (!built.ok) {
    ratingError = built.message;
    await rerender();
    return;
  }
  ratingError = "";
  const existing = await client.getRatings(workbookId);
  const kept = existing.filter((r) => r.expert_id !== built.entry.expert_id);
  await client.putRatings(workbookId, [...kept, built.entry]);
  await rerender();
}

function wire(): void {
  window.addEventListener("hashchange", () => void rerender());

  document.addEventListener("submit", (ev) => {
    const form = ev.target;
    if (!(form instanceof HTMLFormElement)) return;
    ev.preventDefault();
    if (form.classList.contains("scenario-editor")) {
      const draft = currentDraft();
      if (draft) void handleSaveScenario(draft);
    } else if (form.classList.contains("rating-form")) {
      void handleSaveRating(form);
    }
  });

  document.addEventListener("change", (ev) => {
    const el = ev.target;
    if (!(el instanceof HTMLElement)) return;
    const draft = currentDraft();
    if (draft && el instanceof HTMLInputElement && el.hasAttribute("data-enable")) {
      setEnabled(draft, el.getAttribute("data-enable") ?? "", el.checked);
      void rerender();
      return;
    }
    if (draft && el.hasAttribute("data-param")) {
      const key = el.getAttribute("data-param") ?? "";
      const dot = key.indexOf(".");
      const checkerId = key.slice(0, dot);
      const paramName = key.slice(dot + 1);
      const value =
        el instanceof HTMLInputElement && el.type === "checkbox"
          ? String(el.checked)
          : fieldValue(el.parentNode ?? document, `[data-param="${key}"]`);
      setParam(draft, checkers, checkerId, paramName, value);
      void rerender();
      return;
    }
    if (el.getAttribute("data-action") === "group" && reportState) {
      reportState = withGroup(reportState, (el as HTMLSelectElement).value);
      void rerender();
      return;
    }
    if (el.getAttribute("data-action") === "filters" && reportState) {
      const text = (el as HTMLInputElement).value.trim();
      reportState = withFilters(reportState, text === "" ? [] : text.split(/\s+/));
      void rerender();
      return;
    }
    if (el.getAttribute("data-action") === "upload" && el instanceof HTMLInputElement) {
      void handleUpload(el);
    }
  });

  document.addEventListener("input", (ev) => {
    const el = ev.target;
    if (!(el instanceof HTMLInputElement)) return;
    const draft = currentDraft();
    if (!draft) return;
    if (el.getAttribute("data-field") === "name") setName(draft, el.value);
    if (el.getAttribute("data-field") === "description") setDescription(draft, el.value);
  });

  document.addEventListener("click", (ev) => {
    const el = ev.target;
    if (!(el instanceof HTMLElement)) return;
    const action = el.closest("[data-action]")?.getAttribute("data-action");
    if (action === "new-scenario") {
      const id = fieldValue(document, 'input[data-field="new-scenario"]').trim();
      if (id) window.location.hash = `#/scenarios/${id}`;
      return;
    }
    if (action === "create-run") {
      void handleCreateRun();
      return;
    }
    if (action === "evaluate") {
      const runIds = checkedValues("data-eval-run");
      if (runIds.length > 0) window.location.hash = `#/dashboard/${runIds.join(",")}`;
      return;
    }
    if (action === "reload") {
      const draft = currentDraft();
      if (draft) {
        drafts.delete(draft.id);
        void rerender();
      }
      return;
    }
    if (action === "rerun") {
      window.location.hash = "#/";
      return;
    }
    const row = el.closest("li.finding");
    if (row && reportState && currentReport) {
      reportState = selectFinding(
        reportState,
        currentReport,
        row.getAttribute("data-finding"),
      );
      void rerender();
    }
  });
}

async function main(): Promise<void> {
  checkers = await client.listCheckers();
  wire();
  await rerender();
}

void main();
