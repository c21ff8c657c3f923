/** String-building helpers. All views are pure functions returning
 * HTML text, which keeps them testable without a browser. */

export function esc(value: unknown): string {
  return String(value)
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** Template literal tag escaping every interpolated value. */
export function html(strings: TemplateStringsArray, ...values: unknown[]): string {
  let out = strings[0] ?? "";
  values.forEach((value, i) => {
    out += Array.isArray(value) ? value.join("") : esc(value);
    out += strings[i + 1] ?? "";
  });
  return out;
}

/** Opt a pre-rendered fragment out of `html` escaping. */
export function raw(fragment: string): string[] {
  return [fragment];
}

const LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

export function columnLabel(index: number): string {
  let label = "";
  let n = index;
  do {
    label = LETTERS[n % 26] + label;
    n = Math.floor(n / 26) - 1;
  } while (n >= 0);
  return label;
}

/** "Sheet!B3" for a finding's related cell, using the run's sheet names. */
export function cellLabel(
  sheets: string[],
  address: { sheet: number; column: number; row: number },
): string {
  const sheet = sheets[address.sheet] ?? `#${address.sheet}`;
  return `${sheet}!${columnLabel(address.column)}${address.row + 1}`;
}
