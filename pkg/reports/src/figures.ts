/**
 * The five figure kinds rendered from analysis CSVs.
 *
 * effort-vs-n       quantile effort vs sqrt(N), one curve per annealing time,
 *                   with the lower-envelope overlay
 * quantile-scaling  quantile effort vs sqrt(N); censored quantiles terminate
 *                   their curve at the last finite size
 * speedup           speedup S vs sqrt(N), one curve per quantile
 * scatter           instance-by-instance times with density shading, a parity
 *                   diagonal, and never-solved instances pinned to the top row
 * effort-vs-ta      quantile effort vs annealing time with marked minima
 *
 * Plots never recompute statistics: every number shown is read from the CSVs.
 */

import { Table, bool, num, requireColumns } from "./csv";
import { Canvas, PALETTE, Scale } from "./svg";

export interface FigureOptions {
  solver?: string;
  quantiles?: number[];
  range?: number;
  nSpins?: number;
  statistic?: string;
  title?: string;
}

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function filterRows(table: Table, opts: FigureOptions, path: string): Record<string, string>[] {
  let rows = table.rows;
  if (opts.solver && table.columns.includes("solver")) {
    rows = rows.filter((r) => r.solver === opts.solver);
  }
  if (opts.range !== undefined && table.columns.includes("r")) {
    rows = rows.filter((r) => num(r, "r") === opts.range);
  }
  if (rows.length === 0) {
    throw new Error(`${path}: no rows left after filtering (solver/range selection)`);
  }
  return rows;
}

function finiteExtent(values: number[], what: string): [number, number] {
  const finite = values.filter((v) => Number.isFinite(v) && v > 0);
  if (finite.length === 0) throw new Error(`no finite positive ${what} values to plot`);
  return [Math.min(...finite), Math.max(...finite)];
}

export function renderEffortVsN(table: Table, path: string, opts: FigureOptions): string {
  requireColumns(table, ["solver", "r", "N", "q", "t_a", "effort", "censored", "units"], path);
  const q = opts.quantiles?.[0] ?? 50;
  const rows = filterRows(table, opts, path).filter((r) => num(r, "q") === q);
  if (rows.length === 0) throw new Error(`no rows at quantile ${q}`);
  const tas = uniqueSorted(rows.map((r) => num(r, "t_a")));
  const sizes = uniqueSorted(rows.map((r) => num(r, "N")));
  const units = rows[0].units;

  const canvas = new Canvas(640, 440);
  const [eLo, eHi] = finiteExtent(rows.map((r) => num(r, "effort")), "effort");
  const xs = new Scale("sqrt", [sizes[0], sizes[sizes.length - 1]], [canvas.plotLeft, canvas.plotRight]);
  const ys = new Scale("log", [eLo, eHi], [canvas.plotBottom, canvas.plotTop]);
  canvas.axes(xs, ys, "problem size N (sqrt scale)", `total effort [${units}]`);

  const envelope = new Map<number, number>();
  tas.forEach((ta, idx) => {
    const pts: Array<[number, number]> = [];
    for (const n of sizes) {
      const row = rows.find((r) => num(r, "t_a") === ta && num(r, "N") === n);
      if (!row || bool(row, "censored")) continue;
      const effort = num(row, "effort");
      pts.push([xs.apply(n), ys.apply(effort)]);
      const cur = envelope.get(n);
      if (cur === undefined || effort < cur) envelope.set(n, effort);
    }
    canvas.polyline(pts, PALETTE[idx % PALETTE.length], 1.2, `ta-${ta}`);
  });
  const envPts: Array<[number, number]> = [...envelope.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([n, effort]) => [xs.apply(n), ys.apply(effort)]);
  canvas.polyline(envPts, "#d62728", 2.5, "envelope");
  canvas.legend(tas.map((ta, idx) => [`t_a=${ta}`, PALETTE[idx % PALETTE.length]] as [string, string])
    .concat([["envelope", "#d62728"]]));
  return canvas.render(opts.title ?? `Effort at fixed annealing times (${opts.solver ?? "all"}, q=${q})`);
}

export function renderQuantileScaling(table: Table, path: string, opts: FigureOptions): string {
  requireColumns(table, ["solver", "r", "N", "q", "effort", "censored", "units"], path);
  const rows = filterRows(table, opts, path);
  const quantiles = opts.quantiles ?? uniqueSorted(rows.map((r) => num(r, "q")));
  const sizes = uniqueSorted(rows.map((r) => num(r, "N")));
  const units = rows[0].units;

  const canvas = new Canvas(640, 440);
  const [eLo, eHi] = finiteExtent(rows.map((r) => num(r, "effort")), "effort");
  const xs = new Scale("sqrt", [sizes[0], sizes[sizes.length - 1]], [canvas.plotLeft, canvas.plotRight]);
  const ys = new Scale("log", [eLo, eHi], [canvas.plotBottom, canvas.plotTop]);
  canvas.axes(xs, ys, "problem size N (sqrt scale)", `time to solution [${units}]`);

  quantiles.forEach((q, idx) => {
    const pts: Array<[number, number]> = [];
    for (const n of sizes) {
      const row = rows.find((r) => num(r, "q") === q && num(r, "N") === n);
      if (!row) continue;
      if (bool(row, "censored")) break; // censored quantile terminates the line
      pts.push([xs.apply(n), ys.apply(num(row, "effort"))]);
    }
    canvas.polyline(pts, PALETTE[idx % PALETTE.length], 1.8, `q-${q}`);
  });
  canvas.legend(quantiles.map((q, idx) => [`q=${q}%`, PALETTE[idx % PALETTE.length]]));
  return canvas.render(opts.title ?? `Scaling of time to solution (${opts.solver ?? "all"})`);
}

export function renderSpeedup(table: Table, path: string, opts: FigureOptions): string {
  requireColumns(table, ["statistic", "q", "N", "S", "censored", "normalization"], path);
  const statistic = opts.statistic ?? "RofQ";
  let rows = table.rows.filter((r) => r.statistic === statistic);
  if (opts.range !== undefined) rows = rows.filter((r) => num(r, "r") === opts.range);
  if (rows.length === 0) throw new Error(`${path}: no ${statistic} rows`);
  const quantiles = opts.quantiles ?? uniqueSorted(rows.map((r) => num(r, "q")));
  const sizes = uniqueSorted(rows.map((r) => num(r, "N")));

  const canvas = new Canvas(640, 440);
  const values = rows.filter((r) => !bool(r, "censored")).map((r) => num(r, "S"));
  const [sLo, sHi] = finiteExtent(values, "speedup");
  const xs = new Scale("sqrt", [sizes[0], sizes[sizes.length - 1]], [canvas.plotLeft, canvas.plotRight]);
  const ys = new Scale("log", [Math.min(sLo, 0.9), Math.max(sHi, 1.1)], [canvas.plotBottom, canvas.plotTop]);
  canvas.axes(xs, ys, "problem size N (sqrt scale)", `speedup S (${statistic})`);
  canvas.line(canvas.plotLeft, ys.apply(1), canvas.plotRight, ys.apply(1), "#999", 1, "unity");

  quantiles.forEach((q, idx) => {
    const pts: Array<[number, number]> = [];
    for (const n of sizes) {
      const row = rows.find((r) => num(r, "q") === q && num(r, "N") === n);
      if (!row || bool(row, "censored")) continue;
      const s = num(row, "S");
      if (s > 0 && Number.isFinite(s)) pts.push([xs.apply(n), ys.apply(s)]);
    }
    canvas.polyline(pts, PALETTE[idx % PALETTE.length], 1.8, `q-${q}`);
  });
  canvas.legend(quantiles.map((q, idx) => [`q=${q}%`, PALETTE[idx % PALETTE.length]]));
  return canvas.render(opts.title ?? `Speedup (${statistic})`);
}

export function renderScatter(table: Table, path: string, opts: FigureOptions): string {
  requireColumns(table, ["instance_id", "N", "T_num", "T_den", "censored_num", "censored_den"], path);
  let rows = table.rows;
  if (opts.nSpins !== undefined) rows = rows.filter((r) => num(r, "N") === opts.nSpins);
  if (opts.range !== undefined && table.columns.includes("r")) {
    rows = rows.filter((r) => num(r, "r") === opts.range);
  }
  if (rows.length === 0) throw new Error(`${path}: no scatter pairs selected`);
  const numName = rows[0].numerator ?? "classical";
  const denName = rows[0].denominator ?? "device";

  const finiteX = rows.filter((r) => !bool(r, "censored_num")).map((r) => num(r, "T_num"));
  const finiteY = rows.filter((r) => !bool(r, "censored_den")).map((r) => num(r, "T_den"));
  const [xLo, xHi] = finiteExtent(finiteX, "numerator time");
  const [yLo, yHi] = finiteExtent(finiteY.length ? finiteY : finiteX, "denominator time");
  const lo = Math.min(xLo, yLo);
  const hi = Math.max(xHi, yHi);

  const canvas = new Canvas(520, 520, { left: 64, right: 24, top: 28, bottom: 52 });
  const xs = new Scale("log", [lo, hi], [canvas.plotLeft, canvas.plotRight]);
  const ys = new Scale("log", [lo, hi], [canvas.plotBottom, canvas.plotTop + 18]);
  canvas.axes(xs, ys, `${numName} time to solution`, `${denName} time to solution`);
  canvas.line(xs.apply(lo), ys.apply(lo), xs.apply(hi), ys.apply(hi), "#d62728", 1.5, "parity");

  // density shading: bin counts over a fixed grid, darker = more instances
  const bins = 24;
  const yTopPix = Math.min(ys.range[0], ys.range[1]);
  const yBotPix = Math.max(ys.range[0], ys.range[1]);
  const counts = new Map<string, number>();
  let censored = 0;
  for (const row of rows) {
    if (bool(row, "censored_den")) {
      censored += 1;
      continue;
    }
    if (bool(row, "censored_num")) continue;
    const xPix = xs.apply(num(row, "T_num"));
    const yPix = ys.apply(num(row, "T_den"));
    const bx = Math.min(bins - 1, Math.max(0, Math.floor(((xPix - canvas.plotLeft) / (canvas.plotRight - canvas.plotLeft)) * bins)));
    const by = Math.min(bins - 1, Math.max(0, Math.floor(((yPix - yTopPix) / (yBotPix - yTopPix)) * bins)));
    const key = `${bx},${by}`;
    counts.set(key, (counts.get(key) ?? 0) + 1);
  }
  const maxCount = Math.max(1, ...counts.values());
  const cellW = (canvas.plotRight - canvas.plotLeft) / bins;
  const cellH = (yBotPix - yTopPix) / bins;
  for (const [key, count] of [...counts.entries()].sort()) {
    const [bx, by] = key.split(",").map(Number);
    const shade = Math.round(235 - (195 * Math.log1p(count)) / Math.log1p(maxCount));
    const color = `rgb(${shade},${shade},255)`;
    canvas.rect(canvas.plotLeft + bx * cellW, yTopPix + by * cellH, cellW, cellH, color, "density");
  }
  // instances the denominator solver never solved sit on the top row
  let cx = canvas.plotLeft + 6;
  for (const row of rows) {
    if (!bool(row, "censored_den")) continue;
    const x = bool(row, "censored_num") ? cx : xs.apply(num(row, "T_num"));
    canvas.circle(x, canvas.plotTop + 8, 3, "#d62728", "censored");
    cx += 8;
  }
  if (censored > 0) {
    canvas.text(canvas.plotRight, canvas.plotTop + 11, `${censored} unsolved`, { anchor: "end", size: 10 });
  }
  return canvas.render(opts.title ?? `Instance-by-instance comparison (${numName} vs ${denName})`);
}

export function renderEffortVsTa(table: Table, path: string, opts: FigureOptions): string {
  requireColumns(table, ["solver", "r", "N", "q", "t_a", "effort", "censored", "units"], path);
  let rows = filterRows(table, opts, path);
  if (opts.nSpins !== undefined) rows = rows.filter((r) => num(r, "N") === opts.nSpins);
  if (rows.length === 0) throw new Error(`no rows at N=${opts.nSpins}`);
  const quantiles = opts.quantiles ?? uniqueSorted(rows.map((r) => num(r, "q")));
  const tas = uniqueSorted(rows.map((r) => num(r, "t_a")));
  const units = rows[0].units;

  const canvas = new Canvas(640, 440);
  const [eLo, eHi] = finiteExtent(rows.map((r) => num(r, "effort")), "effort");
  const xs = new Scale("log", [tas[0], tas[tas.length - 1]], [canvas.plotLeft, canvas.plotRight]);
  const ys = new Scale("log", [eLo, eHi], [canvas.plotBottom, canvas.plotTop]);
  canvas.axes(xs, ys, `annealing time t_a [${units}]`, `total effort R(t_a)*t_a [${units}]`);

  quantiles.forEach((q, idx) => {
    const pts: Array<[number, number]> = [];
    let best: [number, number] | null = null;
    for (const ta of tas) {
      const row = rows.find((r) => num(r, "q") === q && num(r, "t_a") === ta);
      if (!row || bool(row, "censored")) continue;
      const effort = num(row, "effort");
      pts.push([xs.apply(ta), ys.apply(effort)]);
      if (best === null || effort < best[1]) best = [ta, effort];
    }
    canvas.polyline(pts, PALETTE[idx % PALETTE.length], 1.8, `q-${q}`);
    if (best !== null) {
      canvas.circle(xs.apply(best[0]), ys.apply(best[1]), 4, PALETTE[idx % PALETTE.length], "optimum");
    }
  });
  canvas.legend(quantiles.map((q, idx) => [`q=${q}%`, PALETTE[idx % PALETTE.length]]));
  return canvas.render(opts.title ?? `Optimal annealing time (${opts.solver ?? "all"}, N=${opts.nSpins ?? "?"})`);
}
