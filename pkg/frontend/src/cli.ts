#!/usr/bin/env node
/** Command-line figure renderer.
 *
 *   dnlsplot <kind> --in <csv> [--in <csv>] --out <figure.svg>
 *
 * Kinds: f-trace, distance-trace, drift, gn-scatter.  gn-scatter accepts
 * either one CSV holding both gn_deficit and distance columns, or two
 * CSVs (deficit source, then distance source) joined by row order.
 *
 * Exit codes: 0 success, 1 unreadable/malformed/mismatched data (the
 * message names the offending column header), 2 usage errors.
 */

import { writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";
import { CsvError } from "./csv.js";
import { FIGURE_KINDS, isFigureKind, makePlotSpec, renderPlot } from "./figures.js";

const USAGE = `usage: dnlsplot <kind> --in <csv> [--in <csv>] --out <figure.svg>
kinds: ${FIGURE_KINDS.join(", ")}`;

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string", multiple: true, short: "i" },
        out: { type: "string", short: "o" },
        help: { type: "boolean", short: "h" },
      },
    });
  } catch (err) {
    console.error(`dnlsplot: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  if (parsed.values.help) {
    console.log(USAGE);
    return 0;
  }
  const [kind, ...extra] = parsed.positionals;
  if (kind === undefined || extra.length > 0) {
    console.error(`dnlsplot: expected exactly one figure kind`);
    console.error(USAGE);
    return 2;
  }
  if (!isFigureKind(kind)) {
    console.error(
      `dnlsplot: unknown figure kind "${kind}" (choose from ${FIGURE_KINDS.join(", ")})`,
    );
    return 2;
  }
  const inputs = parsed.values.in ?? [];
  const output = parsed.values.out;
  if (inputs.length === 0 || output === undefined) {
    console.error(`dnlsplot: --in and --out are required`);
    console.error(USAGE);
    return 2;
  }

  try {
    const svg = renderPlot(makePlotSpec(kind, inputs, output));
    writeFileSync(output, svg);
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`dnlsplot: ${err.message}`);
      return 1;
    }
    console.error(`dnlsplot: ${(err as Error).message}`);
    return 1;
  }
  console.log(`wrote ${output}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
