/**
 * Phase-diagram scatter: every logged round becomes a dot at its context
 * parameters, colored by the action the learner picked. Ising uses the
 * one-dimensional field axis; cluster uses the (j1, j2) plane.
 */

import { Family, labelsFor, paletteFor } from "./colors.js";
import { parseCsv, SchemaError, toNumber } from "./csv.js";
import { drawAxes, LinearScale, Rect, SvgDocument } from "./svg.js";

export const PHASE_COLUMNS = [
  "rep",
  "round",
  "param1",
  "param2",
  "chosen_action",
  "optimal_action",
  "gap",
] as const;

export interface PhaseRow {
  param1: number;
  param2: number | null;
  chosen: number;
}

export function parsePhaseCsv(text: string): PhaseRow[] {
  const table = parseCsv(text, [...PHASE_COLUMNS], "phase.csv");
  return table.rows.map((row) => ({
    param1: toNumber(row.param1, "param1", "phase.csv"),
    param2: row.param2.trim() === "" ? null : toNumber(row.param2, "param2", "phase.csv"),
    chosen: toNumber(row.chosen_action, "chosen_action", "phase.csv"),
  }));
}

function span(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * 0.05;
  return [lo - pad, hi + pad];
}

function drawLegend(
  doc: SvgDocument,
  x: number,
  y: number,
  actions: number[],
  palette: readonly string[],
  labels: readonly string[],
): void {
  doc.text(x, y - 12, "actions", { "font-size": 12, "font-weight": "bold" });
  actions.forEach((action, index) => {
    const rowY = y + index * 20;
    doc.open("g", { class: "legend-entry" });
    doc.circle(x + 6, rowY, 5, { fill: palette[action], class: "legend-swatch" });
    doc.text(x + 18, rowY + 4, labels[action], { "font-size": 11 });
    doc.close("g");
  });
}

export function renderPhase(rows: PhaseRow[], family: Family): string {
  if (rows.length === 0) {
    throw new SchemaError("phase.csv: no data rows");
  }
  const palette = paletteFor(family);
  const labels = labelsFor(family);
  for (const row of rows) {
    if (!Number.isInteger(row.chosen) || row.chosen < 0 || row.chosen >= palette.length) {
      throw new SchemaError(
        `phase.csv: unknown action index ${row.chosen} for family '${family}'`,
      );
    }
  }
  const present = [...new Set(rows.map((r) => r.chosen))].sort((a, b) => a - b);

  const width = 820;
  const height = 560;
  const doc = new SvgDocument(width, height);
  const area: Rect = { x: 80, y: 50, width: 540, height: 440 };

  if (family === "cluster") {
    const [x0, x1] = span(rows.map((r) => r.param1));
    const usable = rows.map((r) => r.param2 ?? 0);
    const [y0, y1] = span(usable);
    const xScale = new LinearScale(x0, x1, area.x, area.x + area.width);
    const yScale = new LinearScale(y0, y1, area.y + area.height, area.y);
    drawAxes(doc, area, xScale, yScale, "j1", "j2");
    for (const row of rows) {
      doc.circle(xScale.map(row.param1), yScale.map(row.param2 ?? 0), 2.4, {
        fill: palette[row.chosen],
        "fill-opacity": 0.75,
        class: "phase-dot",
      });
    }
  } else {
    // one-dimensional family: field on x, chosen action index on y (param2 ignored)
    const [x0, x1] = span(rows.map((r) => r.param1));
    const xScale = new LinearScale(x0, x1, area.x, area.x + area.width);
    const yScale = new LinearScale(-0.5, palette.length - 0.5, area.y + area.height, area.y);
    drawAxes(doc, area, xScale, yScale, "h", "chosen action");
    for (const row of rows) {
      doc.circle(xScale.map(row.param1), yScale.map(row.chosen), 2.4, {
        fill: palette[row.chosen],
        "fill-opacity": 0.75,
        class: "phase-dot",
      });
    }
  }
  drawLegend(doc, area.x + area.width + 30, area.y + 20, present, palette, labels);
  return doc.toString();
}
