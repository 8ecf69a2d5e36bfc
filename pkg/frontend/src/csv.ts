/**
 * Strict reader for the simulator's CSV outputs.
 *
 * The files are plain comma-separated tables with a header row and no
 * quoting, so parsing is a split; the value of this module is schema
 * validation with errors that name exactly what is missing.
 */

export class CsvSchemaError extends Error {}

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError('CSV is empty');
  }
  const header = lines[0].split(',');
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(',');
    if (cells.length !== header.length) {
      throw new CsvSchemaError(
        `row ${i + 2} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    return cells;
  });
  if (rows.length === 0) {
    throw new CsvSchemaError('CSV has a header but no data rows');
  }
  return { header, rows };
}

/** Map required column names to indices, naming any missing column. */
export function requireColumns(table: Table, names: string[]): Map<string, number> {
  const index = new Map<string, number>();
  for (const name of names) {
    const at = table.header.indexOf(name);
    if (at < 0) {
      throw new CsvSchemaError(`missing required column: ${name}`);
    }
    index.set(name, at);
  }
  return index;
}

export function numericColumn(table: Table, names: Map<string, number>, name: string): number[] {
  const at = names.get(name)!;
  return table.rows.map((row, i) => {
    const value = Number(row[at]);
    if (!Number.isFinite(value)) {
      throw new CsvSchemaError(`column ${name}, row ${i + 2}: not a number: ${row[at]}`);
    }
    return value;
  });
}

export function stringColumn(table: Table, names: Map<string, number>, name: string): string[] {
  const at = names.get(name)!;
  return table.rows.map((row) => row[at]);
}
