/** The four figure kinds rendered from laboratory CSV artifacts.
 *
 * f-trace        time trace of the norm ratio f (and f^2 against 8*pi/3)
 *                from any CSV with columns t,f
 * distance-trace time trace of the fitted H1 distance to the solitary-wave
 *                orbit from any CSV with columns t,distance
 * drift          conserved quantities: mass against 4*pi plus relative
 *                drifts of M,E,P on a log scale, from columns t,M,E,P
 * gn-scatter     inequality deficit against orbit distance, either from one
 *                CSV with columns gn_deficit,distance or from two CSVs
 *                (deficit source + distance source) joined by row order
 */

import { CsvError, numericColumn, readCsv, type Table } from "./csv.js";
import {
  CRITICAL_MASS,
  DRIFT_GUIDE,
  F_LOWER_BOUND,
  F_SQUARED_AT_GROUND_STATE,
  F_SQUARED_BAND,
  F_UPPER_AT_CRITICAL_MASS,
  defaultReferences,
  type ReferenceLine,
} from "./constants.js";
import {
  renderFigure,
  valueLabel,
  type HLine,
  type Panel,
} from "./svg.js";

export const FIGURE_KINDS = [
  "f-trace",
  "distance-trace",
  "drift",
  "gn-scatter",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export function isFigureKind(value: string): value is FigureKind {
  return (FIGURE_KINDS as readonly string[]).includes(value);
}

/** A figure request: what to draw, from which CSVs, to which file. */
export interface PlotSpec {
  kind: FigureKind;
  /** Input CSV paths; gn-scatter accepts two (deficit, distance). */
  inputs: string[];
  /** Output image path (SVG content). */
  output: string;
  /** Labeled constants drawn as horizontal lines where they fit in range. */
  references: ReferenceLine[];
}

export function makePlotSpec(
  kind: FigureKind,
  inputs: string[],
  output: string,
): PlotSpec {
  return { kind, inputs, output, references: defaultReferences() };
}

const CONSTANT_COLOR = "#b91c1c";
const GUIDE_COLOR = "#6b7280";

function referenceLines(references: ReferenceLine[]): HLine[] {
  return references.map((r) => ({
    value: r.value,
    label: r.label,
    color: CONSTANT_COLOR,
  }));
}

function maxAbsDeviation(values: number[], target: number): number {
  let dev = 0;
  for (const v of values) {
    const d = Math.abs(v - target);
    if (d > dev) dev = d;
  }
  return dev;
}

function fTraceFigure(table: Table, references: ReferenceLine[]): string {
  const t = numericColumn(table, "t");
  const f = numericColumn(table, "f");
  const fSquared = f.map((v) => v * v);
  const deviation = maxAbsDeviation(fSquared, F_SQUARED_AT_GROUND_STATE);

  const top: Panel = {
    yLabel: "f²",
    series: [{ x: t, y: fSquared, color: "#2563eb", marker: "line" }],
    hlines: referenceLines(references),
    band: {
      lo: F_SQUARED_AT_GROUND_STATE - F_SQUARED_BAND,
      hi: F_SQUARED_AT_GROUND_STATE + F_SQUARED_BAND,
      label: `8π/3 ± ${F_SQUARED_BAND.toExponential(0)}`,
      color: "#60a5fa",
    },
  };
  const bottom: Panel = {
    yLabel: "f",
    xLabel: "t",
    series: [{ x: t, y: f, color: "#0f766e", marker: "line" }],
    hlines: [
      ...referenceLines(references),
      {
        value: F_LOWER_BOUND,
        label: `family lower bound ${valueLabel(F_LOWER_BOUND)}`,
        color: GUIDE_COLOR,
      },
    ],
    adopt: [F_UPPER_AT_CRITICAL_MASS, F_LOWER_BOUND],
  };
  return renderFigure(
    "Norm-ratio trace",
    `${table.name}: ${t.length} samples, max |f² − 8π/3| = ${valueLabel(deviation)}`,
    [top, bottom],
  );
}

function distanceTraceFigure(
  table: Table,
  references: ReferenceLine[],
): string {
  const t = numericColumn(table, "t");
  const distance = numericColumn(table, "distance");
  const sup = Math.max(...distance);
  const panel: Panel = {
    yLabel: "H¹ distance to orbit",
    xLabel: "t",
    series: [{ x: t, y: distance, color: "#2563eb", marker: "line" }],
    hlines: referenceLines(references),
    adopt: [0],
  };
  return renderFigure(
    "Orbit-distance trace",
    `${table.name}: ${t.length} samples, sup distance = ${valueLabel(sup)}`,
    [panel],
  );
}

function driftFigure(table: Table, references: ReferenceLine[]): string {
  const t = numericColumn(table, "t");
  const M = numericColumn(table, "M");
  const E = numericColumn(table, "E");
  const P = numericColumn(table, "P");
  const m0 = M[0]!;

  const logDrift = (values: number[]): number[] => {
    const q0 = values[0]!;
    const scale = Math.max(Math.abs(q0), Math.abs(m0));
    return values.map((v) =>
      Math.log10(Math.max(Math.abs(v - q0) / scale, 1e-16)),
    );
  };
  const massDrift = maxAbsDeviation(M, m0) / Math.abs(m0);

  const top: Panel = {
    yLabel: "mass M",
    series: [{ x: t, y: M, color: "#2563eb", marker: "line" }],
    hlines: referenceLines(references),
    adopt: [CRITICAL_MASS],
  };
  const bottom: Panel = {
    yLabel: "log₁₀ relative drift",
    xLabel: "t",
    series: [
      { x: t, y: logDrift(M), color: "#2563eb", label: "M", marker: "line" },
      { x: t, y: logDrift(E), color: "#16a34a", label: "E", marker: "line" },
      { x: t, y: logDrift(P), color: "#d97706", label: "P", marker: "line" },
    ],
    hlines: [
      {
        value: Math.log10(DRIFT_GUIDE),
        label: `${DRIFT_GUIDE.toExponential(0)} guide`,
        color: GUIDE_COLOR,
      },
    ],
    adopt: [Math.log10(DRIFT_GUIDE)],
    yTickFormat: "pow10",
    legend: true,
  };
  return renderFigure(
    "Conserved-quantity drift",
    `${table.name}: ${t.length} samples, max |ΔM|/M₀ = ${valueLabel(massDrift)}, drifts relative to max(|Q₀|, M₀)`,
    [top, bottom],
  );
}

function gnScatterFigure(
  tables: Table[],
  references: ReferenceLine[],
): string {
  let deficit: number[];
  let distance: number[];
  let sourceLabel: string;
  if (tables.length === 1) {
    const table = tables[0]!;
    deficit = numericColumn(table, "gn_deficit");
    distance = numericColumn(table, "distance");
    sourceLabel = table.name;
  } else {
    const [deficitTable, distanceTable] = [tables[0]!, tables[1]!];
    deficit = numericColumn(deficitTable, "gn_deficit");
    distance = numericColumn(distanceTable, "distance");
    if (deficit.length !== distance.length) {
      throw new CsvError(
        `row count mismatch: ${deficitTable.name} has ${deficit.length} ` +
          `rows, ${distanceTable.name} has ${distance.length}`,
      );
    }
    sourceLabel = `${deficitTable.name} + ${distanceTable.name}`;
  }
  const minDeficit = Math.min(...deficit);
  const panel: Panel = {
    yLabel: "inequality deficit",
    xLabel: "H¹ distance to orbit",
    series: [
      { x: distance, y: deficit, color: "#7c3aed", marker: "dots" },
    ],
    hlines: [
      ...referenceLines(references),
      { value: 0, label: "zero deficit", color: GUIDE_COLOR },
    ],
    adopt: [0],
  };
  return renderFigure(
    "Inequality deficit vs orbit distance",
    `${sourceLabel}: ${deficit.length} points, min deficit = ${valueLabel(minDeficit)}`,
    [panel],
  );
}

/** How many input CSVs each kind takes (gn-scatter also accepts two). */
function checkInputCount(kind: FigureKind, count: number): void {
  const ok = kind === "gn-scatter" ? count === 1 || count === 2 : count === 1;
  if (!ok) {
    const expected =
      kind === "gn-scatter" ? "1 or 2 input CSVs" : "exactly 1 input CSV";
    throw new CsvError(`${kind} takes ${expected}, got ${count}`);
  }
}

/** Render a figure from already-parsed tables. */
export function renderFromTables(
  kind: FigureKind,
  tables: Table[],
  references: ReferenceLine[] = defaultReferences(),
): string {
  checkInputCount(kind, tables.length);
  switch (kind) {
    case "f-trace":
      return fTraceFigure(tables[0]!, references);
    case "distance-trace":
      return distanceTraceFigure(tables[0]!, references);
    case "drift":
      return driftFigure(tables[0]!, references);
    case "gn-scatter":
      return gnScatterFigure(tables, references);
  }
}

/** Render a plot spec: read its input CSVs and return the SVG text. */
export function renderPlot(spec: PlotSpec): string {
  checkInputCount(spec.kind, spec.inputs.length);
  const tables = spec.inputs.map((path) => readCsv(path));
  return renderFromTables(spec.kind, tables, spec.references);
}
