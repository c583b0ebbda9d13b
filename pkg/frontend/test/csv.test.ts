import { describe, expect, it } from "vitest";
import { fileURLToPath } from "node:url";
import {
  CsvError,
  numericColumn,
  parseCsvText,
  readCsv,
  requireColumn,
} from "../src/csv.js";

const fixture = (name: string): string =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));

describe("readCsv", () => {
  it("loads the stability reports table", () => {
    const table = readCsv(fixture("reports.csv"));
    expect(table.name).toBe("reports.csv");
    expect(table.columns).toEqual([
      "t",
      "gauge",
      "M",
      "E",
      "P",
      "S",
      "K",
      "f",
      "gn_deficit",
    ]);
    expect(table.rows).toHaveLength(51);
  });

  it("names an unreadable path", () => {
    expect(() => readCsv(fixture("no-such.csv"))).toThrowError(
      /cannot read .*no-such\.csv/,
    );
  });
});

describe("parseCsvText", () => {
  it("rejects an empty file", () => {
    expect(() => parseCsvText("", "empty.csv")).toThrowError(/empty CSV/);
  });

  it("rejects a header-only file", () => {
    expect(() => parseCsvText("t,f\n", "h.csv")).toThrowError(/no data rows/);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsvText("a,b\n1,2\n3\n", "r.csv")).toThrowError(
      /row 2 has 1 cells, expected 2/,
    );
  });
});

describe("column access", () => {
  const table = parseCsvText("t,f\n0.0,2.9\n0.5,2.8\n", "x.csv");

  it("finds present columns", () => {
    expect(requireColumn(table, "f")).toBe(1);
    expect(numericColumn(table, "t")).toEqual([0.0, 0.5]);
  });

  it("names a missing column and the file", () => {
    let message = "";
    try {
      requireColumn(table, "distance");
    } catch (err) {
      message = (err as Error).message;
    }
    expect(message).toContain('missing required column "distance"');
    expect(message).toContain("x.csv");
    expect(message).toContain("t, f");
  });

  it("names a non-numeric cell", () => {
    const bad = parseCsvText("t,gauge\n0.0,u\n", "g.csv");
    expect(() => numericColumn(bad, "gauge")).toThrowError(
      /column "gauge" row 1 is not a finite number/,
    );
    expect(() => numericColumn(bad, "gauge")).toThrowError(CsvError);
  });
});
