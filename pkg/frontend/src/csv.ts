/** Strict CSV loading for the laboratory's artifact files.
 *
 * Every artifact is a rectangular comma-separated table with a single
 * header row.  Figures name the columns they need up front; a missing
 * column, an empty file, or a non-numeric cell in a numeric column is a
 * `CsvError` that names the offending header and file.
 */

import { readFileSync } from "node:fs";
import { basename } from "node:path";
import Papa from "papaparse";

export class CsvError extends Error {}

export interface Table {
  /** Short name used in labels and error messages (file basename). */
  name: string;
  columns: string[];
  /** Raw string cells, row-major, each row aligned with `columns`. */
  rows: string[][];
}

export function parseCsvText(text: string, name: string): Table {
  const parsed = Papa.parse<string[]>(text, {
    delimiter: ",",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0]!;
    throw new CsvError(`${name}: malformed CSV (${first.message})`);
  }
  const records = parsed.data;
  if (records.length === 0) {
    throw new CsvError(`${name}: empty CSV (no header row)`);
  }
  const columns = records[0]!;
  const rows = records.slice(1);
  if (rows.length === 0) {
    throw new CsvError(`${name}: no data rows`);
  }
  for (const [i, row] of rows.entries()) {
    if (row.length !== columns.length) {
      throw new CsvError(
        `${name}: row ${i + 1} has ${row.length} cells, expected ${columns.length}`,
      );
    }
  }
  return { name, columns, rows };
}

export function readCsv(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new CsvError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseCsvText(text, basename(path));
}

/** Index of a required column, or a CsvError naming the missing header. */
export function requireColumn(table: Table, column: string): number {
  const idx = table.columns.indexOf(column);
  if (idx < 0) {
    throw new CsvError(
      `${table.name}: missing required column "${column}" ` +
        `(found: ${table.columns.join(", ")})`,
    );
  }
  return idx;
}

/** A required column parsed as finite numbers. */
export function numericColumn(table: Table, column: string): number[] {
  const idx = requireColumn(table, column);
  return table.rows.map((row, i) => {
    const cell = row[idx]!;
    const value = Number(cell);
    if (cell.trim() === "" || !Number.isFinite(value)) {
      throw new CsvError(
        `${table.name}: column "${column}" row ${i + 1} is not a finite ` +
          `number (got "${cell}")`,
      );
    }
    return value;
  });
}
