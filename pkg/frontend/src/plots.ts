/**
 * The six figure kinds rendered from solver CSVs: field colormaps, layer
 * residual colormaps, velocity vector plots, energy and extrema time series,
 * and vertical sections at a fixed x. Renderers return the pixel buffer plus
 * the exact numbers they plotted, so tests can compare against the CSVs.
 */

import { basename } from "node:path";

import { Diagnostics, LayerGrid, Snapshot, layerGrid, readDiagnostics, readSnapshot, seriesOf } from "./csv.js";
import { diverging, sequential, SERIES_COLORS } from "./colormap.js";
import { encodePng } from "./png.js";
import { BLACK, Color, GREY, Raster, WHITE } from "./raster.js";

export const PLOT_KINDS = [
  "colormap", "residual_colormap", "vector", "energy_series",
  "extrema_series", "vertical_section",
] as const;

export type PlotKind = (typeof PLOT_KINDS)[number];

export interface PlotJob {
  kind: PlotKind;
  inputs: string[];
  layer: number;
  field: string;
  out: string;
  vmin?: number;
  vmax?: number;
}

export interface RenderResult {
  png: Buffer;
  /** the numbers that went into the figure, keyed by series/grid label */
  data: Record<string, Float64Array>;
}

export const FIELD_UNITS: Record<string, string> = {
  rho: "kg/m^3",
  u: "m/s",
  v: "m/s",
  w: "m/s",
  theta: "K",
  theta_pert: "K",
  pressure: "Pa",
};

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { left: 74, right: 88, top: 28, bottom: 46 } as const;

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(2).replace("e+", "e").replace(/e(-?)0*(\d)/, "e$1$2");
  }
  const s = v.toPrecision(5);
  return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
}

function ticks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const candidates = [step, 2 * step, 2.5 * step, 5 * step, 10 * step];
  const chosen = candidates.find((c) => span / c <= n + 1) ?? 10 * step;
  const first = Math.ceil(lo / chosen) * chosen;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-12 * span; v += chosen) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

interface Frame {
  raster: Raster;
  x0: number;
  y0: number;
  w: number;
  h: number;
  xlo: number;
  xhi: number;
  ylo: number;
  yhi: number;
  px(x: number): number;
  py(y: number): number;
}

function makeFrame(raster: Raster, xlo: number, xhi: number, ylo: number, yhi: number,
                   xlabel: string, ylabel: string, title: string): Frame {
  const x0 = MARGIN.left;
  const y0 = MARGIN.top;
  const w = raster.width - MARGIN.left - MARGIN.right;
  const h = raster.height - MARGIN.top - MARGIN.bottom;
  if (!(xhi > xlo)) xhi = xlo + 1;
  if (!(yhi > ylo)) yhi = ylo + 1;
  const px = (x: number) => x0 + ((x - xlo) / (xhi - xlo)) * w;
  const py = (y: number) => y0 + h - ((y - ylo) / (yhi - ylo)) * h;

  raster.line(x0, y0, x0, y0 + h, BLACK);
  raster.line(x0, y0 + h, x0 + w, y0 + h, BLACK);
  raster.line(x0 + w, y0, x0 + w, y0 + h, GREY);
  raster.line(x0, y0, x0 + w, y0, GREY);
  for (const t of ticks(xlo, xhi)) {
    const x = Math.round(px(t));
    raster.line(x, y0 + h, x, y0 + h + 4, BLACK);
    const label = formatTick(t);
    raster.text(x - Raster.textWidth(label) / 2, y0 + h + 8, label, BLACK);
  }
  for (const t of ticks(ylo, yhi)) {
    const y = Math.round(py(t));
    raster.line(x0 - 4, y, x0, y, BLACK);
    const label = formatTick(t);
    raster.text(x0 - 8 - Raster.textWidth(label), y - 3, label, BLACK);
  }
  raster.text(x0 + w / 2 - Raster.textWidth(xlabel) / 2, raster.height - 12, xlabel, BLACK);
  raster.text(6, y0 - 14, ylabel, BLACK);
  raster.text(x0, 8, title, BLACK);
  return { raster, x0, y0, w, h, xlo, xhi, ylo, yhi, px, py };
}

function drawColorbar(raster: Raster, lo: number, hi: number, unit: string,
                      map: (t: number) => Color): void {
  const x0 = raster.width - MARGIN.right + 18;
  const y0 = MARGIN.top;
  const h = raster.height - MARGIN.top - MARGIN.bottom;
  const w = 14;
  for (let y = 0; y < h; y++) {
    const t = 1 - y / (h - 1);
    const color = map(t);
    for (let x = 0; x < w; x++) {
      raster.set(x0 + x, y0 + y, color);
    }
  }
  raster.line(x0, y0, x0 + w, y0, BLACK);
  raster.line(x0, y0 + h, x0 + w, y0 + h, BLACK);
  raster.text(x0, y0 + h + 8, formatTick(lo), BLACK);
  raster.text(x0, y0 - 12, formatTick(hi), BLACK);
  raster.text(x0, y0 + h + 20, unit, BLACK);
}

function gridEdges(centers: Float64Array): Float64Array {
  const n = centers.length;
  const edges = new Float64Array(n + 1);
  for (let i = 1; i < n; i++) edges[i] = 0.5 * (centers[i - 1] + centers[i]);
  edges[0] = centers[0] - (edges[1] - centers[0]);
  edges[n] = centers[n - 1] + (centers[n - 1] - edges[n - 1]);
  return edges;
}

function heatmap(grid: LayerGrid, unit: string, title: string,
                 map: (t: number) => Color, vmin?: number, vmax?: number): RenderResult {
  const raster = new Raster(WIDTH, HEIGHT);
  let lo = vmin ?? Infinity;
  let hi = vmax ?? -Infinity;
  if (vmin === undefined || vmax === undefined) {
    for (const v of grid.values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    if (vmin !== undefined) lo = vmin;
    if (vmax !== undefined) hi = vmax;
  }
  if (!(hi > lo)) hi = lo + 1;
  const xe = gridEdges(grid.x);
  const ze = gridEdges(grid.z);
  const frame = makeFrame(raster, xe[0], xe[xe.length - 1], ze[0], ze[ze.length - 1],
                          "x [m]", "z [m]", title);
  const nz = grid.z.length;
  for (let i = 0; i < grid.x.length; i++) {
    const pxa = frame.px(xe[i]);
    const pxb = frame.px(xe[i + 1]);
    for (let j = 0; j < nz; j++) {
      const t = (grid.values[i * nz + j] - lo) / (hi - lo);
      const pya = frame.py(ze[j + 1]);
      const pyb = frame.py(ze[j]);
      raster.fillRect(pxa, pya, Math.max(1, pxb - pxa), Math.max(1, pyb - pya), map(t));
    }
  }
  drawColorbar(raster, lo, hi, unit, map);
  return { png: encodePng(WIDTH, HEIGHT, raster.data), data: { values: grid.values } };
}

export function renderColormap(job: PlotJob): RenderResult {
  const snap = readSnapshot(requireOne(job));
  const grid = layerGrid(snap, job.layer, job.field as never);
  const unit = FIELD_UNITS[job.field] ?? "";
  const title = `${job.field} layer ${job.layer}`;
  return heatmap(grid, unit, title, sequential, job.vmin, job.vmax);
}

export function renderResidualColormap(job: PlotJob): RenderResult {
  const snap = readSnapshot(requireOne(job));
  if (snap.nLayers < 2) throw new Error("residual plot needs at least two layers");
  const a = layerGrid(snap, 1, job.field as never);
  const b = layerGrid(snap, 2, job.field as never);
  const values = new Float64Array(a.values.length);
  let amax = 0;
  for (let i = 0; i < values.length; i++) {
    values[i] = a.values[i] - b.values[i];
    amax = Math.max(amax, Math.abs(values[i]));
  }
  const span = amax > 0 ? amax : 1;
  const lo = job.vmin ?? -span;
  const hi = job.vmax ?? span;
  const grid: LayerGrid = { x: a.x, z: a.z, values };
  const unit = FIELD_UNITS[job.field] ?? "";
  return heatmap(grid, unit, `${job.field} residual (layer 1 - layer 2)`,
                 diverging, lo, hi);
}

export function renderVector(job: PlotJob): RenderResult {
  const snap = readSnapshot(requireOne(job));
  const u = layerGrid(snap, job.layer, "u");
  const w = layerGrid(snap, job.layer, "w");
  const raster = new Raster(WIDTH, HEIGHT);
  const xe = gridEdges(u.x);
  const ze = gridEdges(u.z);
  const frame = makeFrame(raster, xe[0], xe[xe.length - 1], ze[0], ze[ze.length - 1],
                          "x [m]", "z [m]", `velocity layer ${job.layer}`);
  const nx = u.x.length;
  const nz = u.z.length;
  const stride = Math.max(1, Math.ceil(Math.max(nx, nz) / 40));  // at most 40x40 arrows
  let vmax = 0;
  for (let i = 0; i < u.values.length; i++) {
    vmax = Math.max(vmax, Math.hypot(u.values[i], w.values[i]));
  }
  const cell = Math.min(frame.px(xe[1]) - frame.px(xe[0]),
                        frame.py(ze[0]) - frame.py(ze[1]));
  const scale = vmax > 0 ? (1.4 * cell * stride) / vmax : 0;
  for (let i = 0; i < nx; i += stride) {
    for (let j = 0; j < nz; j += stride) {
      const ui = u.values[i * nz + j];
      const wi = w.values[i * nz + j];
      const x0 = frame.px(u.x[i]);
      const y0 = frame.py(u.z[j]);
      const x1 = x0 + ui * scale;
      const y1 = y0 - wi * scale;
      raster.line(x0, y0, x1, y1, BLACK);
      raster.fillRect(x1 - 1, y1 - 1, 2, 2, BLACK);
    }
  }
  raster.text(frame.x0 + frame.w - 150, frame.y0 + 4,
              `max ${formatTick(vmax)} m/s`, BLACK);
  return { png: encodePng(WIDTH, HEIGHT, raster.data), data: { u: u.values, w: w.values } };
}

function seriesFigure(t: Float64Array, series: Array<{ label: string; values: Float64Array }>,
                      ylabel: string, title: string): RenderResult {
  const raster = new Raster(WIDTH, HEIGHT);
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const v of s.values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!(hi > lo)) {
    hi = lo + Math.max(1e-12, Math.abs(lo) * 1e-6);
  }
  const pad = 0.05 * (hi - lo);
  const frame = makeFrame(raster, t[0], t[t.length - 1], lo - pad, hi + pad,
                          "t [s]", ylabel, title);
  series.forEach((s, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    for (let i = 1; i < t.length; i++) {
      raster.line(frame.px(t[i - 1]), frame.py(s.values[i - 1]),
                  frame.px(t[i]), frame.py(s.values[i]), color);
    }
    const y = frame.y0 + 6 + 12 * k;
    raster.fillRect(frame.x0 + frame.w - 120, y, 8, 8, color);
    raster.text(frame.x0 + frame.w - 108, y, s.label, BLACK);
  });
  const data: Record<string, Float64Array> = { t };
  for (const s of series) data[s.label] = s.values;
  return { png: encodePng(WIDTH, HEIGHT, raster.data), data };
}

export function renderEnergySeries(job: PlotJob): RenderResult {
  const diag = readDiagnostics(requireOne(job));
  const t = seriesOf(diag, "t");
  const series = [{ label: "total", values: seriesOf(diag, "total_energy") }];
  for (let k = 1; k <= diag.nLayers; k++) {
    series.push({ label: `layer ${k}`, values: seriesOf(diag, `energy_l${k}`) });
  }
  return seriesFigure(t, series, "energy [J]", "total energy");
}

export function renderExtremaSeries(job: PlotJob): RenderResult {
  const diag = readDiagnostics(requireOne(job));
  const t = seriesOf(diag, "t");
  const base = job.field === "u" ? "u" : "theta";
  const unit = base === "u" ? "m/s" : "K";
  const series = [];
  for (let k = 1; k <= diag.nLayers; k++) {
    series.push({ label: `max layer ${k}`, values: seriesOf(diag, `${base}_max_l${k}`) });
    series.push({ label: `min layer ${k}`, values: seriesOf(diag, `${base}_min_l${k}`) });
  }
  return seriesFigure(t, series, `${base} [${unit}]`, `${base} extrema`);
}

export function renderVerticalSection(job: PlotJob): RenderResult {
  if (job.inputs.length === 0) throw new Error("vertical_section needs at least one input");
  const sections: Array<{ label: string; z: Float64Array; values: Float64Array }> = [];
  for (const path of job.inputs) {
    const snap = readSnapshot(path);
    const grid = layerGrid(snap, job.layer, job.field as never);
    let best = 0;
    for (let i = 1; i < grid.x.length; i++) {
      if (Math.abs(grid.x[i]) < Math.abs(grid.x[best])) best = i;
    }
    const nz = grid.z.length;
    const column = new Float64Array(nz);
    for (let j = 0; j < nz; j++) column[j] = grid.values[best * nz + j];
    sections.push({ label: basename(path).replace(/\.csv$/, ""), z: grid.z, values: column });
  }
  const raster = new Raster(WIDTH, HEIGHT);
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of sections) {
    for (const v of s.values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!(hi > lo)) hi = lo + Math.max(1e-12, Math.abs(lo) * 1e-6);
  const pad = 0.05 * (hi - lo);
  const unit = FIELD_UNITS[job.field] ?? "";
  const z = sections[0].z;
  const frame = makeFrame(raster, lo - pad, hi + pad, z[0], z[z.length - 1],
                          `${job.field} [${unit}]`, "z [m]",
                          `${job.field} at x nearest 0, layer ${job.layer}`);
  sections.forEach((s, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    for (let j = 1; j < s.z.length; j++) {
      raster.line(frame.px(s.values[j - 1]), frame.py(s.z[j - 1]),
                  frame.px(s.values[j]), frame.py(s.z[j]), color);
    }
    const y = frame.y0 + 6 + 12 * k;
    raster.fillRect(frame.x0 + frame.w - 170, y, 8, 8, color);
    raster.text(frame.x0 + frame.w - 158, y, s.label, BLACK);
  });
  const data: Record<string, Float64Array> = { z };
  for (const s of sections) data[s.label] = s.values;
  return { png: encodePng(WIDTH, HEIGHT, raster.data), data };
}

function requireOne(job: PlotJob): string {
  if (job.inputs.length !== 1) {
    throw new Error(`${job.kind} takes exactly one input file, got ${job.inputs.length}`);
  }
  return job.inputs[0];
}

export function render(job: PlotJob): RenderResult {
  switch (job.kind) {
    case "colormap":
      return renderColormap(job);
    case "residual_colormap":
      return renderResidualColormap(job);
    case "vector":
      return renderVector(job);
    case "energy_series":
      return renderEnergySeries(job);
    case "extrema_series":
      return renderExtremaSeries(job);
    case "vertical_section":
      return renderVerticalSection(job);
    default:
      throw new Error(`unknown plot kind '${(job as PlotJob).kind}'`);
  }
}
