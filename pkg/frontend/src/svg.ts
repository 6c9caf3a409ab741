/**
 * Small SVG builder: enough structure for line charts and scatter plots
 * without pulling in a rendering engine. Output is a standalone SVG
 * document string.
 */

export interface Rect {
  x: number;
  y: number;
  width: number;
  height: number;
}

const FORMAT_PRECISION = 2;

function fmt(value: number): string {
  return value.toFixed(FORMAT_PRECISION).replace(/\.?0+$/, "") || "0";
}

export function escapeText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Affine map from data space to pixel space. */
export class LinearScale {
  constructor(
    readonly domainMin: number,
    readonly domainMax: number,
    readonly rangeMin: number,
    readonly rangeMax: number,
  ) {}

  map(value: number): number {
    const span = this.domainMax - this.domainMin;
    const fraction = span === 0 ? 0.5 : (value - this.domainMin) / span;
    return this.rangeMin + fraction * (this.rangeMax - this.rangeMin);
  }

  /** Round tick positions at a power-of-ten-ish step covering the domain. */
  ticks(count = 5): number[] {
    const span = this.domainMax - this.domainMin;
    if (span <= 0) {
      return [this.domainMin];
    }
    const rawStep = span / Math.max(1, count);
    const magnitude = Math.pow(10, Math.floor(Math.log10(rawStep)));
    const residual = rawStep / magnitude;
    const step = (residual >= 5 ? 5 : residual >= 2 ? 2 : 1) * magnitude;
    const first = Math.ceil(this.domainMin / step) * step;
    const result: number[] = [];
    for (let v = first; v <= this.domainMax + 1e-9; v += step) {
      result.push(Math.abs(v) < step * 1e-9 ? 0 : v);
    }
    return result;
  }
}

export class SvgDocument {
  private readonly parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  open(tag: string, attrs: Record<string, string | number>): void {
    this.parts.push(`<${tag}${renderAttrs(attrs)}>`);
  }

  close(tag: string): void {
    this.parts.push(`</${tag}>`);
  }

  rect(r: Rect, attrs: Record<string, string | number> = {}): void {
    this.parts.push(
      `<rect x="${fmt(r.x)}" y="${fmt(r.y)}" width="${fmt(r.width)}" height="${fmt(r.height)}"${renderAttrs(attrs)}/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, attrs: Record<string, string | number> = {}): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}"${renderAttrs(attrs)}/>`,
    );
  }

  polyline(points: Array<[number, number]>, attrs: Record<string, string | number> = {}): void {
    const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${joined}" fill="none"${renderAttrs(attrs)}/>`);
  }

  polygon(points: Array<[number, number]>, attrs: Record<string, string | number> = {}): void {
    const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polygon points="${joined}"${renderAttrs(attrs)}/>`);
  }

  circle(cx: number, cy: number, r: number, attrs: Record<string, string | number> = {}): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}"${renderAttrs(attrs)}/>`);
  }

  text(x: number, y: number, content: string, attrs: Record<string, string | number> = {}): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}"${renderAttrs(attrs)}>${escapeText(content)}</text>`,
    );
  }

  toString(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
        `viewBox="0 0 ${this.width} ${this.height}" font-family="sans-serif">`,
      `<rect x="0" y="0" width="${this.width}" height="${this.height}" fill="white"/>`,
      ...this.parts,
      "</svg>",
    ].join("\n");
  }
}

function renderAttrs(attrs: Record<string, string | number>): string {
  const entries = Object.entries(attrs);
  if (entries.length === 0) {
    return "";
  }
  return " " + entries.map(([key, value]) => `${key}="${value}"`).join(" ");
}

export function tickLabel(value: number): string {
  if (Number.isInteger(value)) {
    return String(value);
  }
  const rounded = Number(value.toPrecision(4));
  return String(rounded);
}

/** Standard axes with ticks and labels around a plotting area. */
export function drawAxes(
  doc: SvgDocument,
  area: Rect,
  xScale: LinearScale,
  yScale: LinearScale,
  xLabel: string,
  yLabel: string,
): void {
  const bottom = area.y + area.height;
  doc.line(area.x, bottom, area.x + area.width, bottom, { stroke: "#333", "stroke-width": 1 });
  doc.line(area.x, area.y, area.x, bottom, { stroke: "#333", "stroke-width": 1 });
  for (const tick of xScale.ticks(6)) {
    const px = xScale.map(tick);
    doc.line(px, bottom, px, bottom + 4, { stroke: "#333", "stroke-width": 1 });
    doc.text(px, bottom + 16, tickLabel(tick), { "text-anchor": "middle", "font-size": 10 });
  }
  for (const tick of yScale.ticks(5)) {
    const py = yScale.map(tick);
    doc.line(area.x - 4, py, area.x, py, { stroke: "#333", "stroke-width": 1 });
    doc.text(area.x - 7, py + 3, tickLabel(tick), { "text-anchor": "end", "font-size": 10 });
  }
  doc.text(area.x + area.width / 2, bottom + 32, xLabel, {
    "text-anchor": "middle",
    "font-size": 12,
  });
  doc.text(area.x - 38, area.y - 8, yLabel, { "text-anchor": "start", "font-size": 12 });
}
