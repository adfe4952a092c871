"""Conservation audits and per-layer extrema over a layer stack."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import thermo
from .grid import IRHO, IRU, IRT, LayerStack


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Per-audit conserved totals and per-layer extrema (interior cells only)."""

    t: float
    total_mass: float
    total_energy: float
    energy_per_layer: tuple
    theta_min: tuple
    theta_max: tuple
    u_min: tuple
    u_max: tuple
    max_abs_residual_theta: float


def audit(stack: LayerStack, t: float,
          constants: thermo.PhysicalConstants = thermo.DEFAULT_CONSTANTS) -> DiagnosticsRecord:
    """Pure read of conserved totals: mass, extensive energy, theta/u extrema,
    and the largest potential-temperature residual between adjacent layers."""
    q = stack.interior
    grid = stack.grid
    cell_volume = grid.dx * grid.dz * stack.dy

    rho = q[:, IRHO]
    theta = q[:, IRT] / rho
    u = q[:, IRU] / rho
    total_mass = float(rho.sum() * cell_volume)

    z = grid.z_centers()[None, :]
    states = np.moveaxis(q, 1, 0)  # (5, n_layers, nx, nz)
    e = thermo.total_energy(states, z, constants)
    energy_per_layer = tuple(float(v) for v in (rho * e).sum(axis=(1, 2)) * cell_volume)
    total_energy = float(sum(energy_per_layer))

    if stack.n_layers > 1:
        residual = float(np.max(np.abs(theta[1:] - theta[:-1])))
    else:
        residual = 0.0

    return DiagnosticsRecord(
        t=t,
        total_mass=total_mass,
        total_energy=total_energy,
        energy_per_layer=energy_per_layer,
        theta_min=tuple(float(v) for v in theta.min(axis=(1, 2))),
        theta_max=tuple(float(v) for v in theta.max(axis=(1, 2))),
        u_min=tuple(float(v) for v in u.min(axis=(1, 2))),
        u_max=tuple(float(v) for v in u.max(axis=(1, 2))),
        max_abs_residual_theta=residual,
    )
