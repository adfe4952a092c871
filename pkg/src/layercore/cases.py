"""Benchmark experiment catalog and initialization.

Four standard dynamical-core tests on an x-z slab split into crosswise layers:

  bubble    warm bubble rising in a neutral atmosphere, walls all around
  hot_cold  hot bubble (layer 1) against a cold bubble (layer 2), uniform wind,
            periodic in x
  shear     crosswise shear adjustment between a neutral and a stratified layer
  igw       inertia-gravity waves along a periodic channel, three run variants

Backgrounds are hydrostatically balanced per layer; potential-temperature
perturbations enter only through rho*theta, never through rho.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import thermo
from .errors import ConfigError
from .grid import IRHO, IRU, IRV, IRW, IRT, Grid, LayerStack, empty_stack

CASE_IDS = ("bubble", "hot_cold", "shear", "igw")
IGW_VARIANTS = ("layer1", "layer2", "combined")


@dataclass(frozen=True)
class CaseConfig:
    """Resolved experiment configuration: domain, grid, scheme-facing choices."""

    case_id: str
    x_min: float
    lx: float
    lz: float
    ly: float
    tf: float
    nx: int
    nz: int
    n_layers: int = 2
    cfl: float = 0.4
    bc_x: str = "wall"
    bc_z: str = "wall"
    coupling_form: str = "derived"
    run_variant: str = "combined"
    snapshot_times: tuple = ()
    output_dir: str = ""

    @property
    def x_max(self) -> float:
        return self.x_min + self.lx

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dz(self) -> float:
        return self.lz / self.nz

    def grid(self) -> Grid:
        return Grid(self.nx, self.nz, self.dx, self.dz, self.x_min, 0.0)

    def replace(self, **changes) -> "CaseConfig":
        return replace(self, **changes)


def case_catalog():
    """The four experiments with their published domains, grids and end times."""
    slab = dict(x_min=-10000.0, lx=20000.0, lz=10000.0, ly=20000.0,
                nx=160, nz=80)
    return [
        CaseConfig("bubble", tf=1000.0, bc_x="wall",
                   snapshot_times=(0.0, 120.0, 300.0, 600.0, 1000.0), **slab),
        CaseConfig("hot_cold", tf=1000.0, bc_x="periodic",
                   snapshot_times=(0.0, 120.0, 300.0, 600.0, 1000.0), **slab),
        CaseConfig("shear", tf=300.0, bc_x="periodic",
                   snapshot_times=(0.0, 100.0, 200.0, 300.0), **slab),
        CaseConfig("igw", x_min=0.0, lx=300000.0, lz=10000.0, ly=20000.0,
                   tf=3000.0, nx=600, nz=20, bc_x="periodic",
                   snapshot_times=(0.0, 1000.0, 2000.0, 2500.0, 3000.0)),
    ]


def default_config(case_id: str) -> CaseConfig:
    for cfg in case_catalog():
        if cfg.case_id == case_id:
            return cfg
    raise ConfigError(f"unknown case id {case_id!r}; valid: {CASE_IDS}")


THETA_SURFACE = 300.0       # reference potential temperature [K]
BUBBLE_RADIUS = 2000.0      # perturbation radius scale [m]
BRUNT_VAISALA = 0.01        # buoyancy frequency of the stable background [1/s]
SHEAR_U_SCALE = 50.0        # amplitude of the logarithmic wind profile [m/s]
SHEAR_V = 10.0              # crosswise velocity magnitude, shear case [m/s]
HOT_COLD_U = 20.0           # uniform wind, hot/cold case [m/s]
IGW_U = 20.0                # channel wind, igw case [m/s]
IGW_AMPLITUDE = 10.0        # ridge perturbation amplitude [K]
IGW_HALF_WIDTH = 5000.0     # ridge half width [m]
IGW_X1 = 100000.0           # ridge center, first variant [m]
IGW_X2 = 200000.0           # ridge center, second variant [m]


def cosine_bubble(x, z, amplitude, x_center, z_center, radius=BUBBLE_RADIUS):
    """Compactly supported cosine bump: amplitude*cos(pi*L/2) inside L <= 1."""
    ell = np.sqrt((x - x_center) ** 2 + (z - z_center) ** 2) / radius
    return np.where(ell <= 1.0, amplitude * np.cos(0.5 * np.pi * ell), 0.0)


def igw_ridge(x, z, x_center, lz, amplitude=IGW_AMPLITUDE,
              half_width=IGW_HALF_WIDTH):
    """Wave-test perturbation amplitude*sin(pi*z/lz) / (1 + ((x-xc)/a)^2)."""
    return amplitude * np.sin(np.pi * z / lz) / (1.0 + ((x - x_center) / half_width) ** 2)


def shear_wind(z, lz, scale=SHEAR_U_SCALE):
    """Logarithmic wind profile scale*sqrt(log(z/lz + 1))."""
    return scale * np.sqrt(np.log(z / lz + 1.0))


def _require_inside(config, x_center, z_center, label):
    if not (config.x_min <= x_center <= config.x_max and 0.0 <= z_center <= config.lz):
        raise ConfigError(f"{label} center ({x_center}, {z_center}) outside domain")


def init_case(config: CaseConfig,
              constants: thermo.PhysicalConstants = thermo.DEFAULT_CONSTANTS) -> LayerStack:
    """Build the initial layer stack for a case configuration.

    Density comes from the hydrostatic background of each layer's reference
    profile alone; perturbations enter through rho*theta = rho*(theta_bar + theta'),
    and momenta are rho times the prescribed velocities.
    """
    if config.case_id not in CASE_IDS:
        raise ConfigError(f"unknown case id {config.case_id!r}; valid: {CASE_IDS}")
    if config.case_id == "igw" and config.run_variant not in IGW_VARIANTS:
        raise ConfigError(
            f"run_variant must be one of {IGW_VARIANTS}, got {config.run_variant!r}")
    if config.n_layers < 1:
        raise ConfigError("n_layers must be >= 1")

    grid = config.grid()
    x = grid.x_centers()[:, None]
    z = grid.z_centers()[None, :]

    neutral = thermo.ConstantTheta(THETA_SURFACE)
    stable = thermo.StratifiedTheta(THETA_SURFACE, BRUNT_VAISALA)

    if config.case_id == "shear":
        profiles = [neutral if k == 0 else stable for k in range(config.n_layers)]
    elif config.case_id == "igw":
        profiles = [stable] * config.n_layers
    else:
        profiles = [neutral] * config.n_layers

    zeros = np.zeros((grid.nx, grid.nz))
    perts = [zeros] * config.n_layers
    u_init = [zeros] * config.n_layers
    v_init = [zeros] * config.n_layers

    if config.case_id == "bubble":
        _require_inside(config, 0.0, 2000.0, "bubble perturbation")
        perts = list(perts)
        perts[0] = cosine_bubble(x, z, 10.0, 0.0, 2000.0) + zeros
    elif config.case_id == "hot_cold":
        _require_inside(config, 0.0, 2000.0, "hot perturbation")
        _require_inside(config, 0.0, 8000.0, "cold perturbation")
        perts = list(perts)
        perts[0] = cosine_bubble(x, z, 10.0, 0.0, 2000.0) + zeros
        if config.n_layers > 1:
            perts[1] = cosine_bubble(x, z, -15.0, 0.0, 8000.0) + zeros
        u_init = [HOT_COLD_U + zeros] * config.n_layers
    elif config.case_id == "shear":
        u_init = list(u_init)
        v_init = list(v_init)
        u_init[0] = shear_wind(z, config.lz) + zeros
        v_init[0] = SHEAR_V + zeros
        for k in range(1, config.n_layers):
            v_init[k] = -SHEAR_V + zeros
    elif config.case_id == "igw":
        perts = list(perts)
        u_init = list(u_init)
        variant = config.run_variant
        if variant in ("layer1", "combined"):
            _require_inside(config, IGW_X1, 0.0, "wave perturbation")
            perts[0] = igw_ridge(x, z, IGW_X1, config.lz) + zeros
            u_init[0] = IGW_U + zeros
        if variant in ("layer2", "combined") and config.n_layers > 1:
            _require_inside(config, IGW_X2, 0.0, "wave perturbation")
            perts[1] = igw_ridge(x, z, IGW_X2, config.lz) + zeros
            u_init[1] = -IGW_U + zeros

    stack = empty_stack(grid, config.ly, config.n_layers, profiles)
    zc = grid.z_centers()
    for k in range(config.n_layers):
        _, rho_z = thermo.hydrostatic_profile(profiles[k], zc, constants)
        rho = np.broadcast_to(rho_z[None, :], (grid.nx, grid.nz))
        theta = profiles[k].theta(z, constants) + perts[k]
        q = stack.layer(k).interior
        q[IRHO] = rho
        q[IRU] = rho * u_init[k]
        q[IRV] = rho * v_init[k]
        q[IRW] = 0.0
        q[IRT] = rho * theta
    return stack
