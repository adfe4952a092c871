/**
 * Readers for the solver's two CSV formats. Headers are validated exactly;
 * a mismatch is an error naming the offending column, never a guess.
 */

import { readFileSync } from "node:fs";

export const SNAPSHOT_COLUMNS = [
  "x", "z", "layer", "rho", "u", "v", "w", "theta", "theta_pert", "pressure",
] as const;

export type SnapshotField = (typeof SNAPSHOT_COLUMNS)[number];

export interface LayerGrid {
  /** sorted cell-center coordinates */
  x: Float64Array;
  z: Float64Array;
  /** values[i*nz + j] at (x[i], z[j]) */
  values: Float64Array;
}

export interface Snapshot {
  nLayers: number;
  x: Float64Array;
  z: Float64Array;
  /** column values per layer, row order as stored (z-major, x fastest) */
  columns: Map<string, Float64Array[]>;
}

function parseNumeric(text: string, path: string): { header: string[]; rows: Float64Array[] } {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length < 1) throw new Error(`${path}: empty file`);
  const header = lines[0].split(",");
  const rows: Float64Array[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new Error(`${path}: row ${i + 1} has ${parts.length} fields, expected ${header.length}`);
    }
    const row = new Float64Array(parts.length);
    for (let j = 0; j < parts.length; j++) {
      const v = Number(parts[j]);
      if (Number.isNaN(v) && parts[j] !== "nan") {
        throw new Error(`${path}: row ${i + 1}, column '${header[j]}': not a number: '${parts[j]}'`);
      }
      row[j] = v;
    }
    rows.push(row);
  }
  return { header, rows };
}

export function readSnapshot(path: string): Snapshot {
  const { header, rows } = parseNumeric(readFileSync(path, "utf-8"), path);
  for (let i = 0; i < SNAPSHOT_COLUMNS.length; i++) {
    if (header[i] !== SNAPSHOT_COLUMNS[i]) {
      throw new Error(
        `${path}: expected column ${i + 1} to be '${SNAPSHOT_COLUMNS[i]}', found '${header[i] ?? "<missing>"}'`);
    }
  }
  if (header.length !== SNAPSHOT_COLUMNS.length) {
    throw new Error(`${path}: unexpected extra column '${header[SNAPSHOT_COLUMNS.length]}'`);
  }
  const layerIdx = 2;
  const nLayers = Math.round(Math.max(...rows.map((r) => r[layerIdx])));
  const xs = new Set<number>();
  const zs = new Set<number>();
  for (const r of rows) {
    if (r[layerIdx] === 1) {
      xs.add(r[0]);
      zs.add(r[1]);
    }
  }
  const x = Float64Array.from([...xs].sort((a, b) => a - b));
  const z = Float64Array.from([...zs].sort((a, b) => a - b));
  const perLayerCount = x.length * z.length;
  if (rows.length !== perLayerCount * nLayers) {
    throw new Error(`${path}: ${rows.length} rows do not tile a ${x.length}x${z.length}x${nLayers} grid`);
  }
  const columns = new Map<string, Float64Array[]>();
  for (let c = 3; c < SNAPSHOT_COLUMNS.length; c++) {
    const name = SNAPSHOT_COLUMNS[c];
    const perLayer: Float64Array[] = [];
    for (let k = 0; k < nLayers; k++) {
      const vals = new Float64Array(perLayerCount);
      for (let r = 0; r < perLayerCount; r++) {
        vals[r] = rows[k * perLayerCount + r][c];
      }
      perLayer.push(vals);
    }
    columns.set(name, perLayer);
  }
  return { nLayers, x, z, columns };
}

/** Reshape one snapshot column (z-major rows, x fastest) to values[i*nz + j]. */
export function layerGrid(snap: Snapshot, layer: number, field: SnapshotField): LayerGrid {
  const perLayer = snap.columns.get(field);
  if (!perLayer) throw new Error(`snapshot has no field '${field}'`);
  if (layer < 1 || layer > snap.nLayers) {
    throw new Error(`layer ${layer} out of range 1..${snap.nLayers}`);
  }
  const flat = perLayer[layer - 1];
  const nx = snap.x.length;
  const nz = snap.z.length;
  const values = new Float64Array(nx * nz);
  for (let j = 0; j < nz; j++) {
    for (let i = 0; i < nx; i++) {
      values[i * nz + j] = flat[j * nx + i];
    }
  }
  return { x: snap.x, z: snap.z, values };
}

export interface Diagnostics {
  columns: string[];
  nLayers: number;
  /** column name -> series over time */
  series: Map<string, Float64Array>;
}

export function readDiagnostics(path: string): Diagnostics {
  const { header, rows } = parseNumeric(readFileSync(path, "utf-8"), path);
  const fixed = ["t", "total_mass", "total_energy"];
  fixed.forEach((name, i) => {
    if (header[i] !== name) {
      throw new Error(`${path}: expected column ${i + 1} to be '${name}', found '${header[i]}'`);
    }
  });
  if (header[header.length - 1] !== "max_abs_dtheta") {
    throw new Error(`${path}: expected last column 'max_abs_dtheta', found '${header[header.length - 1]}'`);
  }
  const energyCols = header.filter((h) => /^energy_l\d+$/.test(h));
  const nLayers = energyCols.length;
  if (nLayers === 0) throw new Error(`${path}: no energy_l<k> columns found`);
  const series = new Map<string, Float64Array>();
  header.forEach((name, j) => {
    series.set(name, Float64Array.from(rows.map((r) => r[j])));
  });
  return { columns: header, nLayers, series };
}

export function seriesOf(diag: Diagnostics, name: string): Float64Array {
  const s = diag.series.get(name);
  if (!s) throw new Error(`diagnostics file has no column '${name}'`);
  return s;
}
