/**
 * Two-panel regret figure: cumulative expected regret and classifier
 * regret, mean lines with standard-error bands, plus an inset zooming the
 * early rounds where the exploration knee sits.
 */

import { parseCsv, SchemaError, toNumber } from "./csv.js";
import { drawAxes, LinearScale, Rect, SvgDocument } from "./svg.js";

export const REGRET_COLUMNS = [
  "round",
  "mean_regret",
  "stderr_regret",
  "mean_classifier_regret",
  "stderr_classifier_regret",
] as const;

export interface RegretRow {
  round: number;
  meanRegret: number;
  stderrRegret: number;
  meanClassifier: number;
  stderrClassifier: number;
}

export const DEFAULT_INSET_END = 50;

export function parseRegretCsv(text: string): RegretRow[] {
  const table = parseCsv(text, [...REGRET_COLUMNS], "regret.csv");
  return table.rows.map((row) => ({
    round: toNumber(row.round, "round", "regret.csv"),
    meanRegret: toNumber(row.mean_regret, "mean_regret", "regret.csv"),
    stderrRegret: toNumber(row.stderr_regret, "stderr_regret", "regret.csv"),
    meanClassifier: toNumber(row.mean_classifier_regret, "mean_classifier_regret", "regret.csv"),
    stderrClassifier: toNumber(
      row.stderr_classifier_regret,
      "stderr_classifier_regret",
      "regret.csv",
    ),
  }));
}

interface Series {
  title: string;
  mean: (row: RegretRow) => number;
  stderr: (row: RegretRow) => number;
  color: string;
}

const PANELS: Series[] = [
  {
    title: "Cumulative expected regret",
    mean: (r) => r.meanRegret,
    stderr: (r) => r.stderrRegret,
    color: "#1f77b4",
  },
  {
    title: "Cumulative classifier regret",
    mean: (r) => r.meanClassifier,
    stderr: (r) => r.stderrClassifier,
    color: "#d62728",
  },
];

function drawSeries(
  doc: SvgDocument,
  area: Rect,
  rows: RegretRow[],
  series: Series,
  strokeWidth: number,
): void {
  const rounds = rows.map((r) => r.round);
  const upper = rows.map((r) => series.mean(r) + series.stderr(r));
  const xScale = new LinearScale(Math.min(...rounds), Math.max(...rounds), area.x, area.x + area.width);
  const yMax = Math.max(...upper, 1e-12);
  const yScale = new LinearScale(0, yMax * 1.05, area.y + area.height, area.y);
  const hasBand = rows.some((r) => series.stderr(r) > 0);
  if (hasBand) {
    const band: Array<[number, number]> = rows.map((r) => [
      xScale.map(r.round),
      yScale.map(series.mean(r) + series.stderr(r)),
    ]);
    for (let i = rows.length - 1; i >= 0; i--) {
      const r = rows[i];
      band.push([xScale.map(r.round), yScale.map(Math.max(0, series.mean(r) - series.stderr(r)))]);
    }
    doc.polygon(band, { fill: series.color, "fill-opacity": 0.2, stroke: "none", class: "stderr-band" });
  }
  doc.polyline(
    rows.map((r) => [xScale.map(r.round), yScale.map(series.mean(r))]),
    { stroke: series.color, "stroke-width": strokeWidth, class: "mean-line" },
  );
}

function drawPanel(
  doc: SvgDocument,
  area: Rect,
  rows: RegretRow[],
  series: Series,
  insetEnd: number,
): void {
  const rounds = rows.map((r) => r.round);
  const upper = rows.map((r) => series.mean(r) + series.stderr(r));
  const xScale = new LinearScale(Math.min(...rounds), Math.max(...rounds), area.x, area.x + area.width);
  const yMax = Math.max(...upper, 1e-12);
  const yScale = new LinearScale(0, yMax * 1.05, area.y + area.height, area.y);
  drawAxes(doc, area, xScale, yScale, "round", series.title);
  drawSeries(doc, area, rows, series, 1.5);

  const insetRows = rows.filter((r) => r.round <= insetEnd);
  if (insetRows.length >= 2) {
    const inset: Rect = {
      x: area.x + 24,
      y: area.y + 14,
      width: area.width * 0.34,
      height: area.height * 0.3,
    };
    doc.rect(inset, { fill: "white", stroke: "#999", "stroke-width": 0.8, class: "inset" });
    drawSeries(doc, inset, insetRows, series, 1.0);
    doc.text(inset.x + inset.width / 2, inset.y + inset.height + 11, `rounds 0-${insetEnd}`, {
      "text-anchor": "middle",
      "font-size": 9,
      fill: "#555",
    });
  }
}

export function renderRegret(rows: RegretRow[], insetEnd = DEFAULT_INSET_END): string {
  if (rows.length === 0) {
    throw new SchemaError("regret.csv: no data rows");
  }
  const width = 1060;
  const height = 430;
  const doc = new SvgDocument(width, height);
  const panelWidth = 440;
  const panelHeight = 330;
  PANELS.forEach((series, index) => {
    const area: Rect = {
      x: 70 + index * (panelWidth + 90),
      y: 50,
      width: panelWidth,
      height: panelHeight,
    };
    doc.text(area.x + area.width / 2, 30, series.title, {
      "text-anchor": "middle",
      "font-size": 14,
    });
    drawPanel(doc, area, rows, series, insetEnd);
  });
  return doc.toString();
}
