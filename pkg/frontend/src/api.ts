/** Typed fetch client for the workbench service. Expected rejections
 * (validation, conflicts) come back as values so callers can render
 * them; anything else throws ApiError. */

import type {
  CheckerInfo,
  EvaluationDoc,
  RatingEntry,
  ReportDoc,
  Scenario,
  ValidationIssue,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
    message?: string,
  ) {
    super(message ?? `service answered ${status}`);
  }
}

export type SaveScenarioResult =
  | { kind: "saved"; created: boolean; scenario: Scenario }
  | { kind: "invalid"; issues: ValidationIssue[] }
  | { kind: "conflict"; detail: string };

export interface Client {
  health(): Promise<{ status: string }>;
  listCheckers(): Promise<CheckerInfo[]>;
  listScenarios(): Promise<string[]>;
  getScenario(id: string): Promise<Scenario>;
  putScenario(id: string, scenario: Scenario): Promise<SaveScenarioResult>;
  deleteScenario(id: string): Promise<void>;
  listWorkbooks(): Promise<string[]>;
  uploadWorkbook(
    filename: string,
    bytes: Uint8Array | string,
  ): Promise<{ workbook_id: string; sheets: string[] }>;
  listRuns(): Promise<string[]>;
  createRun(
    scenarioId: string,
    workbookIds: string[],
  ): Promise<{ run_id: string; report: ReportDoc }>;
  getRun(runId: string, group?: string, filters?: string[]): Promise<ReportDoc>;
  getRatings(workbookId: string): Promise<RatingEntry[]>;
  putRatings(workbookId: string, ratings: RatingEntry[]): Promise<number>;
  getEvaluation(runIds: string[]): Promise<EvaluationDoc>;
}

async function readBody(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    return text ? JSON.parse(text) : null;
  } catch {
    return text;
  }
}

export function createClient(
  baseUrl: string,
  fetchFn: typeof fetch = fetch,
): Client {
  const base = baseUrl.replace(/\/+$/, "");

  async function request(
    method: string,
    path: string,
    options: { body?: BodyInit; headers?: Record<string, string> } = {},
  ): Promise<unknown> {
    const response = await fetchFn(`${base}${path}`, {
      method,
      body: options.body,
      headers: options.headers,
    });
    const body = await readBody(response);
    if (!response.ok) {
      throw new ApiError(response.status, body, errorMessage(response.status, body));
    }
    return body;
  }

  return {
    async health() {
      return (await request("GET", "/health")) as { status: string };
    },

    async listCheckers() {
      const doc = (await request("GET", "/checkers")) as { checkers: CheckerInfo[] };
      return doc.checkers;
    },

    async listScenarios() {
      const doc = (await request("GET", "/scenarios")) as { scenarios: string[] };
      return doc.scenarios;
    },

    async getScenario(id) {
      const doc = (await request("GET", `/scenarios/${encodeURIComponent(id)}`)) as {
        scenario: Scenario;
      };
      return doc.scenario;
    },

    async putScenario(id, scenario) {
      const response = await fetchFn(`${base}/scenarios/${encodeURIComponent(id)}`, {
        method: "PUT",
        body: JSON.stringify(scenario),
        headers: { "content-type": "application/json" },
      });
      const body = (await readBody(response)) as any;
      if (response.status === 400) {
        return { kind: "invalid", issues: body?.issues ?? [{ detail: String(body) }] };
      }
      if (response.status === 409) {
        return { kind: "conflict", detail: body?.detail ?? "scenario is locked" };
      }
      if (!response.ok) {
        throw new ApiError(response.status, body, errorMessage(response.status, body));
      }
      return { kind: "saved", created: response.status === 201, scenario: body.scenario };
    },

    async deleteScenario(id) {
      await request("DELETE", `/scenarios/${encodeURIComponent(id)}`);
    },

    async listWorkbooks() {
      const doc = (await request("GET", "/workbooks")) as { workbooks: string[] };
      return doc.workbooks;
    },

    async uploadWorkbook(filename, bytes) {
      // copy into a fresh ArrayBuffer-backed view; fetch bodies reject
      // views over a possibly-shared buffer
      const body = typeof bytes === "string" ? bytes : new Uint8Array(bytes);
      return (await request("POST", "/workbooks", {
        body,
        headers: { "x-filename": filename },
      })) as { workbook_id: string; sheets: string[] };
    },

    async listRuns() {
      const doc = (await request("GET", "/runs")) as { runs: string[] };
      return doc.runs;
    },

    async createRun(scenarioId, workbookIds) {
      return (await request("POST", "/runs", {
        body: JSON.stringify({ scenario_id: scenarioId, workbook_ids: workbookIds }),
        headers: { "content-type": "application/json" },
      })) as { run_id: string; report: ReportDoc };
    },

    async getRun(runId, group = "by_checker", filters = []) {
      const query = new URLSearchParams({ group });
      for (const pair of filters) query.append("filter", pair);
      return (await request(
        "GET",
        `/runs/${encodeURIComponent(runId)}?${query.toString()}`,
      )) as ReportDoc;
    },

    async getRatings(workbookId) {
      const doc = (await request(
        "GET",
        `/ratings/${encodeURIComponent(workbookId)}`,
      )) as { ratings: RatingEntry[] };
      return doc.ratings;
    },

    async putRatings(workbookId, ratings) {
      const doc = (await request("PUT", `/ratings/${encodeURIComponent(workbookId)}`, {
        body: JSON.stringify(ratings),
        headers: { "content-type": "application/json" },
      })) as { count: number };
      return doc.count;
    },

    async getEvaluation(runIds) {
      const doc = (await request(
        "GET",
        `/evaluation?run_ids=${encodeURIComponent(runIds.join(","))}`,
      )) as { evaluation: EvaluationDoc };
      return doc.evaluation;
    },
  };
}

export function errorMessage(status: number, body: unknown): string {
  const detail = (body as any)?.detail;
  if (typeof detail === "string") return detail;
  const issues = (body as any)?.issues;
  if (Array.isArray(issues) && issues.length > 0) return issues[0].detail;
  return `service answered ${status}`;
}
