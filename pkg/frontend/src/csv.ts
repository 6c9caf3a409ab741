/**
 * Minimal CSV reading for the runner's output files.
 *
 * The runner writes plain comma-separated values without quoting, so a
 * line split is sufficient. Header validation reports the first missing
 * column by name.
 */

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string, requiredColumns: string[], label: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${label}: file is empty`);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  for (const required of requiredColumns) {
    if (!columns.includes(required)) {
      throw new SchemaError(`${label}: missing column '${required}'`);
    }
  }
  if (lines.length === 1) {
    throw new SchemaError(`${label}: no data rows`);
  }
  const rows: Record<string, string>[] = [];
  for (let i = 1; i < lines.length; i++) {
    const values = lines[i].split(",");
    if (values.length !== columns.length) {
      throw new SchemaError(
        `${label}: row ${i} has ${values.length} fields, expected ${columns.length}`,
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((column, j) => {
      row[column] = values[j];
    });
    rows.push(row);
  }
  return { columns, rows };
}

export function toNumber(value: string, column: string, label: string): number {
  const parsed = Number(value);
  if (!Number.isFinite(parsed)) {
    throw new SchemaError(`${label}: non-numeric value '${value}' in column '${column}'`);
  }
  return parsed;
}
