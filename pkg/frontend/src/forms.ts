/** Generic parameter forms. Controls are generated from each checker's
 * param schema, so a newly registered checker shows up in the editor
 * with no UI changes: one widget per parameter, default prefilled. */

import { html, raw } from "./html.js";
import type { ParamInfo } from "./types.js";

export type ParseResult =
  | { ok: true; value: unknown }
  | { ok: false; message: string };

const INT_RE = /^-?\d+$/;
const DECIMAL_RE = /^-?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$/;

/** Turn raw input-field text into the typed value the service expects. */
export function parseParamInput(spec: ParamInfo, rawText: string): ParseResult {
  switch (spec.type) {
    case "int": {
      const text = rawText.trim();
      if (!INT_RE.test(text)) {
        return { ok: false, message: `${spec.name} must be a whole number` };
      }
      return { ok: true, value: Number(text) };
    }
    case "decimal": {
      const text = rawText.trim();
      if (!DECIMAL_RE.test(text)) {
        return { ok: false, message: `${spec.name} must be a number` };
      }
      return { ok: true, value: Number(text) };
    }
    case "bool":
      return { ok: true, value: rawText === "true" };
    case "string":
      return { ok: true, value: rawText };
    case "string-list":
      return {
        ok: true,
        value: rawText
          .split("\n")
          .map((line) => line.trim())
          .filter((line) => line.length > 0),
      };
  }
}

/** Inverse of parseParamInput: what the input field should contain. */
export function formatParamValue(spec: ParamInfo, value: unknown): string {
  if (spec.type === "string-list") {
    return Array.isArray(value) ? value.join("\n") : "";
  }
  if (spec.type === "bool") {
    return value ? "true" : "false";
  }
  return value === null || value === undefined ? "" : String(value);
}

export function defaultRaw(spec: ParamInfo): string {
  return formatParamValue(spec, spec.default);
}

/** One labeled control for one parameter. `data-param` carries the
 * field key used by both event wiring and validation messages. */
export function renderParamControl(
  checkerId: string,
  spec: ParamInfo,
  rawText: string,
  error?: string,
): string {
  const key = `${checkerId}.${spec.name}`;
  const input = controlFor(key, spec, rawText);
  return html`<div class="param" data-param-row="${key}">
    <label>
      <span class="param-name">${spec.name}</span>
      ${raw(input)}
    </label>
    <p class="param-help">${spec.description}</p>
    ${raw(error ? html`<p class="field-error">${error}</p>` : "")}
  </div>`;
}

function controlFor(key: string, spec: ParamInfo, rawText: string): string {
  switch (spec.type) {
    case "int":
      return html`<input type="number" step="1" data-param="${key}" value="${rawText}">`;
    case "decimal":
      // text + inputmode keeps "1.19" exactly as typed, no spinner rounding
      return html`<input type="text" inputmode="decimal" data-param="${key}" value="${rawText}">`;
    case "bool":
      return html`<input type="checkbox" data-param="${key}"${raw(
        rawText === "true" ? " checked" : "",
      )}>`;
    case "string":
      return html`<input type="text" data-param="${key}" value="${rawText}">`;
    case "string-list":
      return html`<textarea data-param="${key}" rows="3" placeholder="one entry per line">${rawText}</textarea>`;
  }
}

export function renderParamControls(
  checkerId: string,
  schema: ParamInfo[],
  rawValues: Record<string, string>,
  errors: Record<string, string>,
): string {
  return schema
    .map((spec) => {
      const key = `${checkerId}.${spec.name}`;
      return renderParamControl(
        checkerId,
        spec,
        rawValues[spec.name] ?? defaultRaw(spec),
        errors[key],
      );
    })
    .join("");
}
