/**
 * Generates the bubble and shear desk runs the plot tests consume, by driving
 * the solver CLI. Runs once per vitest invocation; cached across test files.
 */

import { spawnSync } from "node:child_process";
import { existsSync, mkdirSync } from "node:fs";
import { join } from "node:path";

export const FIXTURES = join(__dirname, ".fixtures");

function solverRun(args: string[]): void {
  const proc = spawnSync("python3", ["-m", "layercore", "run", ...args],
                         { cwd: join(__dirname, "..", ".."), encoding: "utf-8" });
  if (proc.status !== 0) {
    throw new Error(`solver run failed (${proc.status}):\n${proc.stdout}\n${proc.stderr}`);
  }
}

export default function setup(): void {
  mkdirSync(FIXTURES, { recursive: true });
  const bubble = join(FIXTURES, "bubble");
  if (!existsSync(join(bubble, "diagnostics.csv"))) {
    solverRun(["--case", "bubble", "--nx", "24", "--nz", "12", "--tf", "60",
               "--snapshot_interval", "30", "--output_dir", bubble]);
  }
  const shear = join(FIXTURES, "shear");
  if (!existsSync(join(shear, "diagnostics.csv"))) {
    solverRun(["--case", "shear", "--nx", "24", "--nz", "12", "--tf", "30",
               "--snapshot_interval", "15", "--output_dir", shear]);
  }
}
