/** Deterministic SVG chart primitives.
 *
 * Every coordinate and label goes through fixed-precision formatting and
 * nothing depends on time, locale, or randomness, so rendering the same
 * data twice produces byte-identical output.
 */

export function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Pixel coordinate with stable precision ("-0.00" normalized to "0.00"). */
export function coord(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

/** Deterministic tick label whose precision follows the tick step. */
export function tickLabel(v: number, step: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) return v.toExponential(1);
  const decimals = Math.max(0, -Math.floor(Math.log10(step)));
  return v.toFixed(Math.min(decimals, 6));
}

/** Short deterministic value label for annotations. */
export function valueLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-2) return v.toExponential(3);
  return v.toPrecision(6);
}

/** Round ticks at 1/2/5 spacing covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, count: number): number[] {
  const range = hi - lo;
  if (!(range > 0) || !Number.isFinite(range)) return [lo];
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step =
    [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label?: string;
  /** "line" joins samples, "dots" draws a marker per sample. */
  marker: "line" | "dots";
}

export interface HLine {
  value: number;
  label: string;
  color: string;
  dash?: string;
}

export interface Band {
  lo: number;
  hi: number;
  label: string;
  color: string;
}

export interface Panel {
  yLabel: string;
  xLabel?: string;
  series: Series[];
  /** Drawn (and labeled) only when the value lands inside the y-range. */
  hlines: HLine[];
  band?: Band;
  /** Values the y-range must contain in addition to the data. */
  adopt?: number[];
  /** Explicit y-range override. */
  yRange?: [number, number];
  /** "pow10" renders integer tick v as 1e<v> (for log-scale panels). */
  yTickFormat?: "plain" | "pow10";
  legend?: boolean;
}

const WIDTH = 720;
const PANEL_HEIGHT = 230;
const TITLE_HEIGHT = 40;
const ML = 74;
const MR = 24;
const MT = 16;
const MB = 40;

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

function renderPanel(panel: Panel, top: number): string {
  const pw = WIDTH - ML - MR;
  const ph = PANEL_HEIGHT - MT - MB;
  const py = top + MT;

  const xs = panel.series.flatMap((s) => s.x);
  const ys = panel.series.flatMap((s) => s.y);
  const [xLo, xHi] = extent(xs);
  let [yLo, yHi] = extent(ys);
  for (const v of panel.adopt ?? []) {
    if (v < yLo) yLo = v;
    if (v > yHi) yHi = v;
  }
  if (panel.band) {
    yLo = Math.min(yLo, panel.band.lo);
    yHi = Math.max(yHi, panel.band.hi);
  }
  if (panel.yRange) {
    [yLo, yHi] = panel.yRange;
  } else {
    const pad = (yHi - yLo || Math.abs(yHi) || 1) * 0.08;
    yLo -= pad;
    yHi += pad;
  }
  const xSpan = xHi - xLo || 1;
  const ySpan = yHi - yLo || 1;
  const X = (v: number) => ML + ((v - xLo) / xSpan) * pw;
  const Y = (v: number) => py + ph - ((v - yLo) / ySpan) * ph;

  let s = "";

  // grid + y ticks
  const yTicks = niceTicks(yLo, yHi, 5);
  const yStep = yTicks.length > 1 ? yTicks[1]! - yTicks[0]! : ySpan;
  for (const v of yTicks) {
    const y = coord(Y(v));
    s += `<line x1="${coord(ML)}" y1="${y}" x2="${coord(ML + pw)}" y2="${y}" stroke="#eeeeee" stroke-width="0.6"/>\n`;
    const label =
      panel.yTickFormat === "pow10"
        ? `1e${tickLabel(v, yStep)}`
        : tickLabel(v, yStep);
    s += `<text x="${coord(ML - 6)}" y="${coord(Y(v) + 2.5)}" text-anchor="end" font-size="8" fill="#555555">${esc(label)}</text>\n`;
  }

  // band (flatness corridor)
  if (panel.band) {
    const b = panel.band;
    const yTop = Y(b.hi);
    const height = Math.max(Y(b.lo) - yTop, 0.75);
    s += `<rect x="${coord(ML)}" y="${coord(yTop)}" width="${coord(pw)}" height="${coord(height)}" fill="${b.color}" fill-opacity="0.25"/>\n`;
    s += `<text x="${coord(ML + pw - 4)}" y="${coord(yTop - 3)}" text-anchor="end" font-size="8" fill="${b.color}">${esc(b.label)}</text>\n`;
  }

  // labeled horizontal reference lines (only those inside the range)
  for (const h of panel.hlines) {
    if (h.value < yLo || h.value > yHi) continue;
    const y = coord(Y(h.value));
    s += `<line x1="${coord(ML)}" y1="${y}" x2="${coord(ML + pw)}" y2="${y}" stroke="${h.color}" stroke-width="1" stroke-dasharray="${h.dash ?? "6,3"}"/>\n`;
    s += `<text x="${coord(ML + pw - 4)}" y="${coord(Y(h.value) - 3)}" text-anchor="end" font-size="8" fill="${h.color}">${esc(h.label)}</text>\n`;
  }

  // data
  for (const sr of panel.series) {
    if (sr.marker === "dots") {
      for (let i = 0; i < sr.x.length; i++) {
        s += `<circle cx="${coord(X(sr.x[i]!))}" cy="${coord(Y(sr.y[i]!))}" r="2" fill="${sr.color}" fill-opacity="0.7"/>\n`;
      }
    } else {
      const pts = sr.x
        .map((v, i) => `${coord(X(v))},${coord(Y(sr.y[i]!))}`)
        .join(" ");
      s += `<polyline fill="none" stroke="${sr.color}" stroke-width="1.2" points="${pts}"/>\n`;
    }
  }

  // frame
  s += `<line x1="${coord(ML)}" y1="${coord(py)}" x2="${coord(ML)}" y2="${coord(py + ph)}" stroke="#333333" stroke-width="0.8"/>\n`;
  s += `<line x1="${coord(ML)}" y1="${coord(py + ph)}" x2="${coord(ML + pw)}" y2="${coord(py + ph)}" stroke="#333333" stroke-width="0.8"/>\n`;

  // x ticks
  const xTicks = niceTicks(xLo, xHi, 7);
  const xStep = xTicks.length > 1 ? xTicks[1]! - xTicks[0]! : xSpan;
  for (const v of xTicks) {
    const x = coord(X(v));
    s += `<line x1="${x}" y1="${coord(py + ph)}" x2="${x}" y2="${coord(py + ph + 4)}" stroke="#333333" stroke-width="0.6"/>\n`;
    s += `<text x="${x}" y="${coord(py + ph + 14)}" text-anchor="middle" font-size="8" fill="#555555">${esc(tickLabel(v, xStep))}</text>\n`;
  }
  if (panel.xLabel) {
    s += `<text x="${coord(ML + pw / 2)}" y="${coord(py + ph + 28)}" text-anchor="middle" font-size="9" fill="#333333">${esc(panel.xLabel)}</text>\n`;
  }
  s += `<text x="16" y="${coord(py + ph / 2)}" text-anchor="middle" font-size="9" fill="#333333" transform="rotate(-90,16,${coord(py + ph / 2)})">${esc(panel.yLabel)}</text>\n`;

  // legend
  if (panel.legend) {
    let row = 0;
    for (const sr of panel.series) {
      if (!sr.label) continue;
      const ly = py + 8 + row * 11;
      s += `<line x1="${coord(ML + 8)}" y1="${coord(ly)}" x2="${coord(ML + 22)}" y2="${coord(ly)}" stroke="${sr.color}" stroke-width="1.5"/>\n`;
      s += `<text x="${coord(ML + 26)}" y="${coord(ly + 3)}" font-size="8" fill="#333333">${esc(sr.label)}</text>\n`;
      row += 1;
    }
  }
  return s;
}

/** Stack panels under a title/subtitle block into one standalone SVG. */
export function renderFigure(
  title: string,
  subtitle: string,
  panels: Panel[],
): string {
  const height = TITLE_HEIGHT + panels.length * PANEL_HEIGHT;
  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${height}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${WIDTH}" height="${height}" fill="#ffffff"/>\n`;
  s += `<text x="${coord(ML)}" y="18" font-size="12" font-weight="600" fill="#222222">${esc(title)}</text>\n`;
  s += `<text x="${coord(ML)}" y="32" font-size="9" fill="#777777">${esc(subtitle)}</text>\n`;
  for (const [i, panel] of panels.entries()) {
    s += renderPanel(panel, TITLE_HEIGHT + i * PANEL_HEIGHT);
  }
  s += `</svg>\n`;
  return s;
}
