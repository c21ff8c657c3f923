/** Expert rating capture: good/poor verdicts per workbook, with the
 * cells the expert believes are genuinely wrong. */

import { html, raw } from "./html.js";
import type { RatingEntry } from "./types.js";

const CELL_REF_RE = /^(?:\d+!)?\$?[A-Za-z]{1,3}\$?\d+$/;

/** Parse the free-text error-cell box: whitespace/comma separated refs
 * like "A1 B2" or "0!C3". Throws on anything that is not a cell ref. */
export function parseErrorCells(text: string): string[] {
  const parts = text
    .split(/[\s,]+/)
    .map((part) => part.trim())
    .filter((part) => part.length > 0);
  for (const part of parts) {
    if (!CELL_REF_RE.test(part)) {
      throw new Error(`'${part}' is not a cell reference`);
    }
  }
  return parts;
}

export interface RatingFormInput {
  workbookId: string;
  expertId: string;
  rating: string;
  errorCellsText: string;
  notes: string;
}

export type RatingBuildResult =
  | { ok: true; entry: RatingEntry }
  | { ok: false; message: string };

export function buildRatingEntry(input: RatingFormInput): RatingBuildResult {
  const expertId = input.expertId.trim();
  if (expertId === "") {
    return { ok: false, message: "expert id must not be empty" };
  }
  const rating: RatingEntry["rating"] | null =
    input.rating === "good" ? "good" : input.rating === "poor" ? "poor" : null;
  if (rating === null) {
    return { ok: false, message: "rating must be 'good' or 'poor'" };
  }
  let errorCells: string[];
  try {
    errorCells = parseErrorCells(input.errorCellsText);
  } catch (err) {
    return { ok: false, message: err instanceof Error ? err.message : String(err) };
  }
  const entry: RatingEntry = {
    workbook_id: input.workbookId,
    expert_id: expertId,
    rating,
  };
  if (errorCells.length > 0) {
    entry.error_cells = errorCells;
  }
  const notes = input.notes.trim();
  if (notes !== "") {
    entry.notes = notes;
  }
  return { ok: true, entry };
}

export function renderRatingForm(
  workbookId: string,
  existing: RatingEntry[],
  error?: string,
): string {
  const rows = existing.map(
    (entry) => html`<li class="rating">
      <strong>${entry.expert_id}</strong>
      <span class="verdict ${entry.rating}">${entry.rating}</span>
      ${raw(
        entry.error_cells && entry.error_cells.length > 0
          ? html`<span class="error-cells">${entry.error_cells.join(", ")}</span>`
          : "",
      )}
      ${raw(entry.notes ? html`<span class="notes">${entry.notes}</span>` : "")}
    </li>`,
  );
  return html`<form class="rating-form" data-workbook="${workbookId}">
    <h3>Ratings for ${workbookId}</h3>
    <ul class="existing">${raw(rows.join(""))}</ul>
    <label>Expert <input type="text" data-field="expert_id"></label>
    <label>Verdict
      <select data-field="rating">
        <option value="good">good</option>
        <option value="poor">poor</option>
      </select>
    </label>
    <label>Error cells <input type="text" data-field="error_cells"
      placeholder="A1 B2 1!C3"></label>
    <label>Notes <input type="text" data-field="notes"></label>
    ${raw(error ? html`<p class="field-error">${error}</p>` : "")}
    <button type="submit" data-action="save-rating">Save rating</button>
  </form>`;
}
