/**
 * Reader for the versioned annealbench CSV files.
 *
 * Every file starts with a `# annealbench-<kind>-v1` schema line followed by
 * a regular header row.  Cells use "inf" for censored values, "true"/"false"
 * for booleans and "" for not-a-value.
 */

import * as fs from "node:fs";

export interface Table {
  schema: string;
  columns: string[];
  rows: Record<string, string>[];
}

export function readTable(path: string): Table {
  const text = fs.readFileSync(path, "utf8");
  const lines = text.split("\n").filter((ln) => ln.length > 0);
  if (lines.length < 2 || !lines[0].startsWith("# annealbench-")) {
    throw new Error(`${path}: not an annealbench CSV (missing schema line)`);
  }
  const schema = lines[0].slice(2);
  const columns = lines[1].split(",");
  const rows = lines.slice(2).map((ln) => {
    const cells = ln.split(",");
    const row: Record<string, string> = {};
    columns.forEach((col, i) => {
      row[col] = cells[i] ?? "";
    });
    return row;
  });
  return { schema, columns, rows };
}

export function requireColumns(table: Table, needed: string[], path: string): void {
  for (const col of needed) {
    if (!table.columns.includes(col)) {
      throw new Error(`${path}: missing column '${col}' (have: ${table.columns.join(", ")})`);
    }
  }
}

export function num(row: Record<string, string>, col: string): number {
  const cell = row[col];
  if (cell === "inf") return Infinity;
  if (cell === "" || cell === undefined) return NaN;
  const value = Number(cell);
  if (Number.isNaN(value)) {
    throw new Error(`cannot parse '${cell}' in column '${col}' as a number`);
  }
  return value;
}

export function bool(row: Record<string, string>, col: string): boolean {
  return row[col] === "true";
}

/** Load several CSVs of one schema kind and concatenate their rows. */
export function readTables(paths: string[], schema: string): Table {
  if (paths.length === 0) throw new Error("no input CSVs given");
  const tables = paths.map((p) => {
    const t = readTable(p);
    if (t.schema !== schema) {
      throw new Error(`${p}: expected schema ${schema}, found ${t.schema}`);
    }
    return t;
  });
  return {
    schema,
    columns: tables[0].columns,
    rows: tables.flatMap((t) => t.rows),
  };
}
