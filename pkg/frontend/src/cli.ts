#!/usr/bin/env node
/**
 * viz <kind> --in <files...> [--layer k] [--field name] --out path [--vmin a] [--vmax b]
 *
 * kinds: colormap, residual_colormap, vector, energy_series, extrema_series,
 * vertical_section. Inputs are solver snapshot/diagnostics CSVs.
 */

import { writeFileSync } from "node:fs";

import { PLOT_KINDS, PlotJob, PlotKind, render } from "./plots.js";

export function parseArgs(argv: string[]): PlotJob {
  if (argv.length === 0) {
    throw new Error(`usage: viz <kind> --in <files...> --out <path>; kinds: ${PLOT_KINDS.join(", ")}`);
  }
  const kind = argv[0] as PlotKind;
  if (!PLOT_KINDS.includes(kind)) {
    throw new Error(`unknown plot kind '${argv[0]}'; valid: ${PLOT_KINDS.join(", ")}`);
  }
  const job: PlotJob = { kind, inputs: [], layer: 1, field: "theta", out: "" };
  let i = 1;
  while (i < argv.length) {
    const flag = argv[i];
    if (flag === "--in") {
      i += 1;
      while (i < argv.length && !argv[i].startsWith("--")) {
        job.inputs.push(argv[i]);
        i += 1;
      }
      continue;
    }
    const value = argv[i + 1];
    if (value === undefined) throw new Error(`flag ${flag} needs a value`);
    switch (flag) {
      case "--layer":
        job.layer = Number(value);
        if (!Number.isInteger(job.layer) || job.layer < 1) {
          throw new Error(`--layer must be a positive integer, got '${value}'`);
        }
        break;
      case "--field":
        job.field = value;
        break;
      case "--out":
        job.out = value;
        break;
      case "--vmin":
        job.vmin = Number(value);
        break;
      case "--vmax":
        job.vmax = Number(value);
        break;
      default:
        throw new Error(`unknown flag '${flag}'`);
    }
    i += 2;
  }
  if (job.inputs.length === 0) throw new Error("--in is required");
  if (!job.out) throw new Error("--out is required");
  return job;
}

export function main(argv: string[]): number {
  let job: PlotJob;
  try {
    job = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  try {
    const result = render(job);
    writeFileSync(job.out, result.png);
    console.log(`wrote ${job.out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
}

if (process.argv[1] && /cli\.(js|ts)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
