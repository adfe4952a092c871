"""Configuration parsing, the run driver, and the CSV/manifest output formats.

Config files are UTF-8 text with one ``key = value`` per line and ``#`` comments.
Resolution is layered: built-in case defaults, then the config file, then
command-line flags. Snapshot and diagnostics files are plain CSV with floats
printed to 17 significant digits so they round-trip double precision exactly.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, thermo
from .cases import CASE_IDS, IGW_VARIANTS, CaseConfig, default_config, init_case
from .coupling import COUPLING_FORMS
from .diagnostics import DiagnosticsRecord, audit
from .errors import ConfigError, StepRejectedError
from .flux import LIMITER_KINDS
from .grid import IRHO, IRU, IRV, IRW, IRT, LayerStack
from .integrate import SchemeParams, StepContext, compute_dt, strang_step
from .reconstruct import WenoParams

log = logging.getLogger("layercore")

_INT_KEYS = ("nx", "nz", "n_layers")
_FLOAT_KEYS = ("cfl", "tf", "omega", "snapshot_interval",
               "epsilon", "r_exponent", "lambda_center")
_CHOICE_KEYS = {
    "case": CASE_IDS,
    "run_variant": IGW_VARIANTS,
    "bc_x": ("wall", "periodic"),
    "coupling_form": COUPLING_FORMS,
    "limiter": LIMITER_KINDS,
}
_STR_KEYS = ("output_dir",)
VALID_KEYS = tuple(sorted(_INT_KEYS + _FLOAT_KEYS + tuple(_CHOICE_KEYS) + _STR_KEYS))

SNAPSHOT_HEADER = "x,z,layer,rho,u,v,w,theta,theta_pert,pressure"


def format_float(v: float) -> str:
    """17 significant digits: enough to round-trip any double exactly."""
    return format(float(v), ".17g")


def _coerce(key: str, raw: str, where: str = ""):
    if key not in VALID_KEYS:
        raise ConfigError(f"unknown key {key!r}{where}; valid keys: {', '.join(VALID_KEYS)}")
    raw = raw.strip()
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"key {key!r} expects an integer, got {raw!r}{where}") from None
    if key in _FLOAT_KEYS:
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"key {key!r} expects a number, got {raw!r}{where}") from None
    if key in _CHOICE_KEYS:
        if raw not in _CHOICE_KEYS[key]:
            raise ConfigError(f"key {key!r} must be one of "
                              f"{{{', '.join(_CHOICE_KEYS[key])}}}, got {raw!r}{where}")
        return raw
    return raw


def parse_config_file(path) -> dict:
    """Read ``key = value`` lines; returns coerced values keyed by name."""
    values = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value' (line {lineno}): {line.strip()!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        values[key] = _coerce(key, raw, f" (line {lineno})")
    return values


def _validate_ranges(kv: dict):
    checks = {
        "nx": (lambda v: v >= 1, "must be >= 1"),
        "nz": (lambda v: v >= 1, "must be >= 1"),
        "n_layers": (lambda v: v >= 1, "must be >= 1"),
        "cfl": (lambda v: 0.0 < v < 1.0, "must lie in (0, 1)"),
        "tf": (lambda v: v >= 0.0, "must be >= 0"),
        "omega": (lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]"),
        "snapshot_interval": (lambda v: v > 0.0, "must be positive"),
        "epsilon": (lambda v: v > 0.0, "must be positive"),
        "r_exponent": (lambda v: v > 0.0, "must be positive"),
        "lambda_center": (lambda v: v > 0.0, "must be positive"),
    }
    for key, (ok, msg) in checks.items():
        if key in kv and not ok(kv[key]):
            raise ConfigError(f"key {key!r} {msg}, got {kv[key]}")


def resolve_settings(kv: dict):
    """Turn a merged key/value mapping into (CaseConfig, SchemeParams)."""
    _validate_ranges(kv)
    if "case" not in kv:
        raise ConfigError("missing required key 'case'")
    config = default_config(kv["case"])
    field_keys = ("run_variant", "nx", "nz", "n_layers", "cfl", "tf",
                  "bc_x", "coupling_form", "output_dir")
    overrides = {k: kv[k] for k in field_keys if k in kv}
    if overrides:
        config = config.replace(**overrides)
    if "snapshot_interval" in kv:
        interval = kv["snapshot_interval"]
        count = int(np.floor(config.tf / interval + 1.0e-9)) + 1
        config = config.replace(snapshot_times=tuple(k * interval for k in range(count)))
    weno = WenoParams(epsilon=kv.get("epsilon", 1.0e-12),
                      r_exponent=kv.get("r_exponent", 5.0),
                      lambda_center=kv.get("lambda_center", 100.0))
    scheme = SchemeParams(weno=weno,
                          omega=kv.get("omega", 0.5),
                          limiter=kv.get("limiter", "van_leer"))
    return config, scheme


def parse_config(path=None, overrides=None):
    """Layered resolution: case defaults <- config file <- explicit overrides."""
    kv = parse_config_file(path) if path is not None else {}
    for key, raw in (overrides or {}).items():
        kv[key] = _coerce(key, raw, " (command line)") if isinstance(raw, str) else raw
    _validate_ranges(kv)
    return resolve_settings(kv)


@dataclass
class RunManifest:
    """Record of one run: resolved settings, code version, outputs, wall clock."""

    config: CaseConfig
    scheme: SchemeParams
    version: str = __version__
    started_utc: str = ""
    elapsed_seconds: float = 0.0
    steps: int = 0
    final_time: float = 0.0
    snapshots: list = None
    diagnostics_file: str = ""

    def to_json(self) -> str:
        body = {
            "version": self.version,
            "case": asdict(self.config),
            "scheme": {
                "weno": asdict(self.scheme.weno),
                "omega": self.scheme.omega,
                "limiter": self.scheme.limiter,
            },
            "started_utc": self.started_utc,
            "elapsed_seconds": self.elapsed_seconds,
            "steps": self.steps,
            "final_time": self.final_time,
            "snapshots": self.snapshots or [],
            "diagnostics": self.diagnostics_file,
        }
        return json.dumps(body, indent=2, sort_keys=True)


def write_snapshot(stack: LayerStack, t: float, directory,
                   constants: thermo.PhysicalConstants = thermo.DEFAULT_CONSTANTS) -> Path:
    """One CSV per snapshot: snap_t<seconds, zero-padded>.csv, layer-major rows."""
    if not stack.profiles:
        raise ValueError("snapshot needs background profiles to compute theta_pert")
    path = Path(directory) / f"snap_t{int(round(t)):06d}.csv"
    grid = stack.grid
    xs = grid.x_centers()
    zs = grid.z_centers()
    lines = [SNAPSHOT_HEADER]
    for k in range(stack.n_layers):
        q = stack.layer(k).interior
        rho = q[IRHO]
        u = q[IRU] / rho
        v = q[IRV] / rho
        w = q[IRW] / rho
        theta = q[IRT] / rho
        theta_bar = stack.profiles[k].theta(zs, constants)
        pert = theta - theta_bar[None, :]
        p = thermo.pressure(q[IRT], constants)
        for j in range(grid.nz):
            zstr = format_float(zs[j])
            for i in range(grid.nx):
                lines.append(",".join((
                    format_float(xs[i]), zstr, str(k + 1),
                    format_float(rho[i, j]), format_float(u[i, j]),
                    format_float(v[i, j]), format_float(w[i, j]),
                    format_float(theta[i, j]), format_float(pert[i, j]),
                    format_float(p[i, j]))))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def read_snapshot(path):
    """Parse a snapshot CSV back into (header_fields, float array of shape (rows, 10))."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    if lines[0] != SNAPSHOT_HEADER:
        raise ValueError(f"unexpected snapshot header: {lines[0]!r}")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, data


def diagnostics_header(n_layers: int) -> str:
    cols = ["t", "total_mass", "total_energy"]
    for name in ("energy", "theta_min", "theta_max", "u_min", "u_max"):
        cols += [f"{name}_l{k + 1}" for k in range(n_layers)]
    cols.append("max_abs_dtheta")
    return ",".join(cols)


def write_diagnostics(records, directory) -> Path:
    """Single diagnostics.csv, one row per audit."""
    if not records:
        raise ValueError("need at least one diagnostics record")
    n_layers = len(records[0].energy_per_layer)
    path = Path(directory) / "diagnostics.csv"
    lines = [diagnostics_header(n_layers)]
    for rec in records:
        vals = [rec.t, rec.total_mass, rec.total_energy]
        vals += list(rec.energy_per_layer)
        vals += list(rec.theta_min) + list(rec.theta_max)
        vals += list(rec.u_min) + list(rec.u_max)
        vals.append(rec.max_abs_residual_theta)
        lines.append(",".join(format_float(v) for v in vals))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def run(config: CaseConfig, scheme: SchemeParams = SchemeParams()) -> int:
    """Drive one experiment: init, step to tf, audit every step, snapshot on
    schedule. Returns the process exit status (0 ok, 1 config, 2 step failure,
    3 I/O)."""
    try:
        stack = init_case(config, scheme.constants)
    except ConfigError as err:
        print(f"error: config: {err}", file=sys.stderr)
        return 1
    out_dir = Path(config.output_dir or f"out_{config.case_id}")
    manifest = RunManifest(config=config, scheme=scheme, snapshots=[],
                           started_utc=datetime.now(timezone.utc).isoformat())
    t_start = time.perf_counter()
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        ctx = StepContext(dt=0.0, cfl=config.cfl)
        records = [audit(stack, ctx.t, scheme.constants)]
        pending = sorted(set(config.snapshot_times))

        def flush_snapshots():
            while pending and pending[0] <= ctx.t:
                scheduled = pending.pop(0)
                path = write_snapshot(stack, scheduled, out_dir, scheme.constants)
                manifest.snapshots.append(
                    {"scheduled_t": scheduled, "actual_t": ctx.t, "file": path.name})

        flush_snapshots()
        while ctx.t < config.tf:
            dt = compute_dt(stack, ctx.cfl, scheme.constants)
            stack, dt_used = strang_step(stack, dt, config.bc_x, config.bc_z,
                                         config.coupling_form, scheme)
            ctx.t += dt_used
            ctx.dt = dt_used
            ctx.step_index += 1
            records.append(audit(stack, ctx.t, scheme.constants))
            flush_snapshots()
            if ctx.step_index % 200 == 0:
                log.info("step %d: t=%.3f dt=%.4f", ctx.step_index, ctx.t, ctx.dt)

        manifest.diagnostics_file = write_diagnostics(records, out_dir).name
        manifest.steps = ctx.step_index
        manifest.final_time = ctx.t
        manifest.elapsed_seconds = time.perf_counter() - t_start
        (out_dir / "manifest.json").write_text(manifest.to_json() + "\n",
                                               encoding="utf-8")
        return 0
    except StepRejectedError as err:
        print(f"error: step: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: io: {err}", file=sys.stderr)
        return 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layercore",
        description="Layered finite-volume dynamical core for dry mesoscale flows.")
    parser.add_argument("--version", action="version",
                        version=f"layercore {__version__}")
    sub = parser.add_subparsers(dest="command")
    run_p = sub.add_parser("run", help="run an experiment from a config file and/or flags")
    run_p.add_argument("config", nargs="?", default=None,
                       help="config file with 'key = value' lines")
    for key in VALID_KEYS:
        run_p.add_argument(f"--{key}", dest=key, default=None, metavar="VALUE")
    sub.add_parser("cases", help="print the built-in case catalog")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args = _build_parser().parse_args(argv)
    if args.command == "cases":
        for cfg in (default_config(cid) for cid in CASE_IDS):
            print(f"{cfg.case_id}: {cfg.nx}x{cfg.nz} cells, {cfg.n_layers} layers, "
                  f"x in [{cfg.x_min:g}, {cfg.x_max:g}] m, lz={cfg.lz:g} m, "
                  f"tf={cfg.tf:g} s, bc_x={cfg.bc_x}")
        return 0
    if args.command == "run":
        overrides = {k: getattr(args, k) for k in VALID_KEYS if getattr(args, k) is not None}
        try:
            config, scheme = parse_config(args.config, overrides)
        except ConfigError as err:
            print(f"error: config: {err}", file=sys.stderr)
            return 1
        except OSError as err:
            print(f"error: io: {err}", file=sys.stderr)
            return 3
        return run(config, scheme)
    _build_parser().print_help()
    return 1
