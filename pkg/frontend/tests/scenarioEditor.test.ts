import { describe, expect, it } from "vitest";

import type { Client, SaveScenarioResult } from "../src/api.js";
import {
  applyServiceIssues,
  canSave,
  draftFromScenario,
  draftToScenario,
  newDraft,
  renderScenarioEditor,
  saveDraft,
  setEnabled,
  setName,
  setParam,
} from "../src/scenarioEditor.js";
import type { CheckerInfo, Scenario } from "../src/types.js";

const CHECKERS: CheckerInfo[] = [
  {
    id: "constants-in-formulae",
    display_name: "Constants in formulae",
    summary: "Finds numeric constants repeated across formulas.",
    params: [
      { name: "min_uses", type: "int", default: 2, description: "Firing threshold." },
      {
        name: "ignore_values",
        type: "string-list",
        default: [],
        description: "Constants to skip.",
      },
    ],
  },
  {
    id: "blank-only-cells",
    display_name: "Blank-only cells",
    summary: "Finds cells whose content consists only of blank characters.",
    params: [],
  },
];

/** A client whose putScenario is scripted; everything else explodes. */
function fakeClient(
  put: (id: string, scenario: Scenario) => SaveScenarioResult,
): { client: Client; calls: { id: string; scenario: Scenario }[] } {
  const calls: { id: string; scenario: Scenario }[] = [];
  const fail = () => {
    throw new Error("unexpected client call");
  };
  const client: Client = {
    health: fail,
    listCheckers: fail,
    listScenarios: fail,
    getScenario: fail,
    putScenario: async (id, scenario) => {
      calls.push({ id, scenario });
      return put(id, scenario);
    },
    deleteScenario: fail,
    listWorkbooks: fail,
    uploadWorkbook: fail,
    listRuns: fail,
    createRun: fail,
    getRun: fail,
    getRatings: fail,
    putRatings: fail,
    getEvaluation: fail,
  };
  return { client, calls };
}

describe("drafts", () => {
  it("starts with every checker present, disabled, defaults prefilled", () => {
    const draft = newDraft("audit", CHECKERS);
    expect(draft.checkers.map((c) => c.id)).toEqual([
      "constants-in-formulae",
      "blank-only-cells",
    ]);
    expect(draft.checkers.every((c) => !c.enabled)).toBe(true);
    const constants = draft.checkers[0]!;
    expect(constants.params["min_uses"]).toBe(2);
    expect(constants.raw["min_uses"]).toBe("2");
    expect(draft.dirty).toBe(false);
  });

  it("renders defaults into the form controls", () => {
    const fragment = renderScenarioEditor(newDraft("audit", CHECKERS), CHECKERS);
    expect(fragment).toContain(
      'data-param="constants-in-formulae.min_uses" value="2"',
    );
    expect(fragment).toContain("Constants in formulae");
    expect(fragment).toContain("Blank-only cells");
  });

  it("loads a saved scenario back into an equivalent draft", () => {
    const scenario: Scenario = {
      name: "audit",
      description: "nightly",
      checkers: [
        {
          id: "constants-in-formulae",
          enabled: true,
          severity: "error",
          params: { min_uses: 3, ignore_values: ["0", "1"] },
        },
      ],
    };
    const draft = draftFromScenario("audit", scenario, CHECKERS);
    expect(draftToScenario(draft)).toEqual(scenario);
    expect(draft.checkers[0]!.raw["ignore_values"]).toBe("0\n1");
  });
});

describe("validation", () => {
  it("blocks saving while a field-level message is unresolved", async () => {
    const draft = newDraft("audit", CHECKERS);
    setName(draft, "audit");
    setEnabled(draft, "constants-in-formulae", true);
    setParam(draft, CHECKERS, "constants-in-formulae", "min_uses", "three");

    expect(draft.validation["constants-in-formulae.min_uses"]).toContain(
      "whole number",
    );
    expect(canSave(draft)).toBe(false);
    const rendered = renderScenarioEditor(draft, CHECKERS);
    expect(rendered).toContain("min_uses must be a whole number");
    expect(rendered).toContain('data-action="save" disabled');

    const { client, calls } = fakeClient(() => {
      throw new Error("unreachable");
    });
    await expect(saveDraft(client, draft)).rejects.toThrow(
      "unresolved validation",
    );
    expect(calls).toHaveLength(0);
  });

  it("clears the message once the field is corrected", () => {
    const draft = newDraft("audit", CHECKERS);
    setName(draft, "audit");
    setParam(draft, CHECKERS, "constants-in-formulae", "min_uses", "three");
    setParam(draft, CHECKERS, "constants-in-formulae", "min_uses", "3");
    expect(draft.validation).toEqual({});
    expect(canSave(draft)).toBe(true);
    expect(draft.checkers[0]!.params["min_uses"]).toBe(3);
  });

  it("requires a scenario name", () => {
    const draft = newDraft("audit", CHECKERS);
    expect(canSave(draft)).toBe(false);
    setName(draft, "  ");
    expect(draft.validation["name"]).toBe("name must not be empty");
    setName(draft, "audit");
    expect(canSave(draft)).toBe(true);
  });

  it("maps service 400 issues onto the offending fields", () => {
    const draft = newDraft("audit", CHECKERS);
    applyServiceIssues(draft, [
      {
        code: "param-type-mismatch",
        checker_id: "constants-in-formulae",
        param: "min_uses",
        detail: "expected int",
      },
      { code: "empty-name", detail: "name must not be empty" },
      { detail: "something else entirely" },
    ]);
    expect(draft.validation["constants-in-formulae.min_uses"]).toBe("expected int");
    expect(draft.validation["name"]).toBe("name must not be empty");
    expect(draft.validation["form"]).toBe("something else entirely");
    expect(canSave(draft)).toBe(false);
  });
});

describe("saveDraft", () => {
  function readyDraft(): ReturnType<typeof newDraft> {
    const draft = newDraft("audit", CHECKERS);
    setName(draft, "audit");
    setEnabled(draft, "blank-only-cells", true);
    return draft;
  }

  it("sends only enabled checkers and clears dirty on success", async () => {
    const draft = readyDraft();
    const { client, calls } = fakeClient((_, scenario) => ({
      kind: "saved",
      created: true,
      scenario,
    }));
    const outcome = await saveDraft(client, draft);
    expect(outcome.saved).toBe(true);
    expect(calls).toHaveLength(1);
    expect(calls[0]!.id).toBe("audit");
    expect(calls[0]!.scenario.checkers.map((c) => c.id)).toEqual([
      "blank-only-cells",
    ]);
    expect(draft.dirty).toBe(false);
    expect(draft.conflict).toBeNull();
  });

  it("lands returned 400 issues back on the draft", async () => {
    const draft = readyDraft();
    const { client } = fakeClient(() => ({
      kind: "invalid",
      issues: [{ code: "unknown-checker", detail: "no such checker" }],
    }));
    const outcome = await saveDraft(client, draft);
    expect(outcome.saved).toBe(false);
    expect(draft.validation["form"]).toBe("no such checker");
    expect(canSave(draft)).toBe(false);
  });

  it("records a 409 and renders the reload prompt", async () => {
    const draft = readyDraft();
    const { client } = fakeClient(() => ({
      kind: "conflict",
      detail: "scenario 'audit' is locked by another editor",
    }));
    const outcome = await saveDraft(client, draft);
    expect(outcome.saved).toBe(false);
    expect(draft.conflict).toContain("locked by another editor");

    const rendered = renderScenarioEditor(draft, CHECKERS);
    expect(rendered).toContain("Someone else is editing this scenario");
    expect(rendered).toContain('data-action="reload"');
    expect(rendered).toContain("Reload latest");
  });
});
