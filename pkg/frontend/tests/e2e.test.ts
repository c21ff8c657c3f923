/** End-to-end: drive a live service through the full loop and check
 * that every number the UI renders is the number the service sent.
 * Needs `python3 -m sheetlint` to be importable (PYTHONPATH is pointed
 * at the repository's src/ so a plain checkout works too).
 */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtemp, rm } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, createClient, type Client } from "../src/api.js";
import { findBlockers, renderBlockers, renderDashboard } from "../src/dashboard.js";
import { esc } from "../src/html.js";
import { buildRatingEntry } from "../src/ratings.js";
import {
  diffFindings,
  newViewState,
  renderDiff,
  renderNotFound,
  renderReportBrowser,
} from "../src/reportBrowser.js";
import {
  newDraft,
  saveDraft,
  setEnabled,
  setName,
} from "../src/scenarioEditor.js";
import type {
  CheckerInfo,
  EvaluationDoc,
  ReportDoc,
  UiScenarioDraft,
} from "../src/types.js";
import { GROUP_KEYS } from "../src/types.js";

const CLEAN_DOC = {
  sheets: [
    {
      name: "Calc",
      protection_enabled: true,
      cells: { A1: { value: 10 }, B1: { formula: "=A1*2" } },
    },
  ],
};

// protection off and a blank-only A1: two findings under the scenario below
const DEFECTIVE_DOC = {
  sheets: [
    {
      name: "Calc",
      protection_enabled: false,
      cells: { A1: { value: " " }, B1: { formula: "=A1" } },
    },
  ],
};

const ENABLED = [
  "blank-only-cells",
  "constants-in-formulae",
  "unprotected-formula-cells",
];

const port = 8700 + Math.floor(Math.random() * 800);
const base = `http://127.0.0.1:${port}`;

let workspace = "";
let server: ChildProcess | null = null;
let serverLog = "";
let client: Client;
let checkers: CheckerInfo[] = [];
let draft: UiScenarioDraft;
let firstReport: ReportDoc;
let evaluation: EvaluationDoc;

async function waitForHealth(): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    if (server && server.exitCode !== null) {
      throw new Error(`service exited early (${server.exitCode}):\n${serverLog}`);
    }
    try {
      const res = await fetch(`${base}/health`);
      if (res.ok) return;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error(`service never became healthy on ${base}:\n${serverLog}`);
}

beforeAll(async () => {
  workspace = await mkdtemp(join(tmpdir(), "workbench-e2e-"));
  const srcDir = fileURLToPath(new URL("../../src", import.meta.url));
  server = spawn(
    "python3",
    ["-m", "sheetlint", "serve", "--workspace", workspace, "--port", String(port)],
    {
      env: { ...process.env, PYTHONPATH: srcDir, PYTHONUNBUFFERED: "1" },
      stdio: ["ignore", "pipe", "pipe"],
    },
  );
  server.stdout?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  server.stderr?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  await waitForHealth();
  client = createClient(base);
}, 60_000);

afterAll(async () => {
  if (server && server.exitCode === null) {
    const gone = new Promise<void>((resolve) => server?.once("exit", () => resolve()));
    server.kill("SIGTERM");
    await Promise.race([
      gone,
      new Promise((resolve) => setTimeout(resolve, 5_000)),
    ]);
    if (server.exitCode === null) server.kill("SIGKILL");
  }
  if (workspace) {
    await rm(workspace, { recursive: true, force: true });
  }
}, 30_000);

describe("workbench against a live service", () => {
  it("creates a scenario through the editor flow", async () => {
    checkers = await client.listCheckers();
    expect(checkers.map((c) => c.id)).toContain("blank-only-cells");

    draft = newDraft("audit", checkers);
    setName(draft, "quarterly audit");
    for (const id of ENABLED) setEnabled(draft, id, true);
    const outcome = await saveDraft(client, draft);
    expect(outcome.saved).toBe(true);
    expect(outcome.result).toMatchObject({ kind: "saved", created: true });

    // the service's copy is exactly what the draft stood for
    const stored = await client.getScenario("audit");
    expect(stored.name).toBe("quarterly audit");
    expect(stored.checkers.map((c) => c.id).sort()).toEqual([...ENABLED].sort());
  }, 30_000);

  it("uploads workbooks and runs the scenario", async () => {
    const clean = await client.uploadWorkbook("clean.json", JSON.stringify(CLEAN_DOC));
    const messy = await client.uploadWorkbook(
      "defective.json",
      JSON.stringify(DEFECTIVE_DOC),
    );
    expect(clean.workbook_id).toBe("clean.json");
    expect(messy.sheets).toEqual(["Calc"]);

    const created = await client.createRun("audit", ["clean.json", "defective.json"]);
    firstReport = created.report;
    expect(firstReport.totals.count).toBe(2);
    expect(firstReport.run.run_id).toBe(created.run_id);
  }, 30_000);

  it("browses the report under every group key, numbers matching the wire", async () => {
    for (const group of GROUP_KEYS) {
      const doc = await client.getRun(firstReport.run.run_id, group);
      expect(`by_${doc.group_by}`).toBe(group);

      const state = { ...newViewState(firstReport.run.run_id), group };
      const rendered = renderReportBrowser(state, doc);
      expect(rendered).toContain(`${doc.totals.count} findings`);
      for (const g of doc.groups) {
        expect(rendered).toContain(
          `${esc(g.label)} <span class="count">(${g.finding_ids.length})</span>`,
        );
      }
      // every finding row present exactly once
      for (const f of doc.findings) {
        expect(rendered.match(new RegExp(`data-finding="${f.finding_id}"`, "g"))).toHaveLength(1);
      }
    }
  }, 30_000);

  it("applies filters on the service side and renders the filtered totals", async () => {
    const doc = await client.getRun(firstReport.run.run_id, "by_checker", [
      "checker=blank-only-cells",
    ]);
    expect(doc.totals.count).toBe(1);
    expect(Object.keys(doc.totals.by_checker)).toEqual(["blank-only-cells"]);
    const rendered = renderReportBrowser(
      { ...newViewState(firstReport.run.run_id), filters: ["checker=blank-only-cells"] },
      doc,
    );
    expect(rendered).toContain("1 findings");
  }, 30_000);

  it("blocks evaluation until every analyzed workbook is rated", async () => {
    const workbookIds = firstReport.run.workbooks.map((w) => w.id);
    const ratings: Record<string, Awaited<ReturnType<Client["getRatings"]>>> = {};
    for (const id of workbookIds) ratings[id] = await client.getRatings(id);
    const blockers = findBlockers(workbookIds, ratings);
    expect(blockers).toEqual(["clean.json", "defective.json"]);
    const rendered = renderBlockers(blockers);
    expect(rendered).toContain('href="#/workbooks/clean.json/ratings"');
    expect(rendered).toContain('href="#/workbooks/defective.json/ratings"');
  }, 30_000);

  it("records expert ratings built by the form layer", async () => {
    const good = buildRatingEntry({
      workbookId: "clean.json",
      expertId: "e1",
      rating: "good",
      errorCellsText: "",
      notes: "",
    });
    const poor = buildRatingEntry({
      workbookId: "defective.json",
      expertId: "e1",
      rating: "poor",
      errorCellsText: "A1",
      notes: "blank header",
    });
    if (!good.ok || !poor.ok) throw new Error("rating entries should build");
    expect(await client.putRatings("clean.json", [good.entry])).toBe(1);
    expect(await client.putRatings("defective.json", [poor.entry])).toBe(1);

    const stored = await client.getRatings("defective.json");
    expect(stored).toHaveLength(1);
    expect(stored[0]).toMatchObject({
      expert_id: "e1",
      rating: "poor",
      error_cells: ["A1"],
    });
  }, 30_000);

  it("renders the dashboard purely from the evaluation document", async () => {
    evaluation = await client.getEvaluation([firstReport.run.run_id]);
    const rendered = renderDashboard([firstReport.run.run_id], evaluation);

    // rows in the service's ranking order, no client re-sorting
    const order = [...rendered.matchAll(/<tr class="rule[^"]*" data-checker="([^"]+)"/g)].map(
      (m) => m[1],
    );
    expect(order).toEqual(evaluation.ranking);
    expect(evaluation.ranking[0]).toBe("blank-only-cells");

    for (const rule of evaluation.rules) {
      // confusion counts verbatim
      expect(rendered).toContain(`${rule.tp}/${rule.fp}/${rule.fn}/${rule.tn}`);
      const row = rendered.slice(rendered.indexOf(`data-checker="${rule.checker_id}"`));
      const cells = row.slice(0, row.indexOf("</tr>"));
      // the four metric cells hold exactly the wire values, in order
      const shown = [...cells.matchAll(/<td class="metric[^"]*">(-?[\d.]+)/g)].map(
        (m) => m[1],
      );
      expect(shown).toEqual(
        [rule.precision, rule.recall, rule.accuracy, rule.mcc].map(String),
      );
      // undefined markers match the service's `undefined` list
      const marked = (cells.match(/undefined-metric/g) ?? []).length;
      const expected = rule.undefined.filter((name) =>
        ["precision", "recall", "accuracy", "mcc"].includes(name),
      ).length;
      expect(marked).toBe(expected);
      if (rule.perfect) {
        expect(cells).toContain("perfect-badge");
      }
    }

    // with one poor workbook caught and one good workbook left alone,
    // the blank checker is flawless on this sample
    const blank = evaluation.rules.find((r) => r.checker_id === "blank-only-cells");
    expect(blank).toMatchObject({ tp: 1, fp: 0, fn: 0, tn: 1, perfect: true });

    for (const entry of evaluation.consensus) {
      expect(rendered).toContain(
        `${entry.good_votes} good / ${entry.poor_votes} poor`,
      );
    }
  }, 30_000);

  it("diffs a re-run after disabling a checker: its findings are the removals", async () => {
    setEnabled(draft, "blank-only-cells", false);
    const outcome = await saveDraft(client, draft);
    expect(outcome.saved).toBe(true);
    expect(outcome.result).toMatchObject({ kind: "saved", created: false });

    const second = await client.createRun("audit", ["clean.json", "defective.json"]);
    const diff = diffFindings(firstReport, second.report);

    const blankFindings = firstReport.findings.filter(
      (f) => f.checker_id === "blank-only-cells",
    );
    expect(blankFindings.length).toBeGreaterThan(0);
    expect(diff.added).toEqual([]);
    expect(diff.removed.map((f) => f.finding_id).sort()).toEqual(
      blankFindings.map((f) => f.finding_id).sort(),
    );

    const rendered = renderDiff(firstReport, second.report);
    expect(rendered).toContain(`Resolved findings <span class="count">(${diff.removed.length})</span>`);
    expect(rendered).toContain(`New findings <span class="count">(0)</span>`);
  }, 30_000);

  it("shows the missing-run state for a deleted or unknown run", async () => {
    await expect(client.getRun("0000000000000000")).rejects.toMatchObject({
      status: 404,
    });
    try {
      await client.getRun("0000000000000000");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
    }
    const rendered = renderNotFound("0000000000000000");
    expect(rendered).toContain("0000000000000000");
  }, 30_000);
});
