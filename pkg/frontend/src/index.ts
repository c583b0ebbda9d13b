export {
  CRITICAL_MASS,
  DRIFT_GUIDE,
  F_LOWER_BOUND,
  F_SQUARED_AT_GROUND_STATE,
  F_SQUARED_BAND,
  F_UPPER_AT_CRITICAL_MASS,
  defaultReferences,
  type ReferenceLine,
} from "./constants.js";
export {
  CsvError,
  numericColumn,
  parseCsvText,
  readCsv,
  requireColumn,
  type Table,
} from "./csv.js";
export {
  FIGURE_KINDS,
  isFigureKind,
  makePlotSpec,
  renderFromTables,
  renderPlot,
  type FigureKind,
  type PlotSpec,
} from "./figures.js";
export { renderFigure, type Panel } from "./svg.js";
export { run } from "./cli.js";
