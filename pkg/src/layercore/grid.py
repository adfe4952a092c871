"""Structured x-z grids, layered state storage, and ghost-cell boundary fills.

Array layout: a layer stack stores conserved variables as (n_layers, 5, nx+2G, nz+2G)
with G = NGHOST ghost cells on every side of the x-z plane. Component order is
[rho, rho*u, rho*v, rho*w, rho*theta].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InadmissibleStateError

NVARS = 5
IRHO, IRU, IRV, IRW, IRT = range(NVARS)
NGHOST = 2  # WENO stencils reach two cells

BC_KINDS = ("wall", "periodic")


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid over [x_min, x_min+nx*dx] x [z_min, z_min+nz*dz]."""

    nx: int
    nz: int
    dx: float
    dz: float
    x_min: float = 0.0
    z_min: float = 0.0

    def x_centers(self):
        return self.x_min + (np.arange(self.nx) + 0.5) * self.dx

    def z_centers(self):
        return self.z_min + (np.arange(self.nz) + 0.5) * self.dz


@dataclass
class LayerField:
    """One layer's conserved variables on the ghosted grid: shape (5, nx+2G, nz+2G)."""

    data: np.ndarray
    ng: int = NGHOST

    @property
    def interior(self):
        g = self.ng
        return self.data[:, g:-g, g:-g]


@dataclass
class LayerStack:
    """Ordered set of layers sharing one grid; the y extent ly is split evenly."""

    grid: Grid
    ly: float
    data: np.ndarray                 # (n_layers, 5, nx+2G, nz+2G)
    profiles: tuple = ()             # background profile per layer (may be empty)
    ng: int = NGHOST

    @property
    def n_layers(self) -> int:
        return self.data.shape[0]

    @property
    def dy(self) -> float:
        return self.ly / self.n_layers

    @property
    def interior(self):
        g = self.ng
        return self.data[:, :, g:-g, g:-g]

    def layer(self, k: int) -> LayerField:
        return LayerField(self.data[k], self.ng)

    @property
    def layers(self):
        return [self.layer(k) for k in range(self.n_layers)]

    def copy(self) -> "LayerStack":
        return LayerStack(self.grid, self.ly, self.data.copy(), self.profiles, self.ng)

    def with_data(self, data: np.ndarray) -> "LayerStack":
        return LayerStack(self.grid, self.ly, data, self.profiles, self.ng)


def empty_stack(grid: Grid, ly: float, n_layers: int, profiles=()) -> LayerStack:
    shape = (n_layers, NVARS, grid.nx + 2 * NGHOST, grid.nz + 2 * NGHOST)
    return LayerStack(grid, ly, np.zeros(shape), tuple(profiles))


def check_admissible(state, what="state"):
    """Raise unless rho > 0 and rho*theta > 0 (NaNs fail both comparisons)."""
    if not (np.all(state[..., IRHO, :, :] > 0.0)
            and np.all(state[..., IRT, :, :] > 0.0)):
        raise InadmissibleStateError(f"inadmissible {what}: rho or rho*theta <= 0")


def _validate_bc(bc_x: str, bc_z: str):
    if bc_x not in BC_KINDS:
        raise ConfigError(f"bc_x must be one of {BC_KINDS}, got {bc_x!r}")
    if bc_z != "wall":
        raise ConfigError(f"bc_z must be 'wall', got {bc_z!r}")


def fill_ghosts(data: np.ndarray, bc_x: str, bc_z: str, ng: int = NGHOST):
    """Fill the ghost frame of ``data`` (..., 5, nx+2G, nz+2G) in place.

    Solid walls mirror the normal momentum and copy everything else; periodic
    sides copy across. x is filled first so the z fill propagates into corners.
    """
    _validate_bc(bc_x, bc_z)
    if bc_x == "periodic":
        data[..., :ng, :] = data[..., -2 * ng:-ng, :]
        data[..., -ng:, :] = data[..., ng:2 * ng, :]
    else:
        for k in range(ng):
            data[..., ng - 1 - k, :] = data[..., ng + k, :]
            data[..., -ng + k, :] = data[..., -ng - 1 - k, :]
        data[..., IRU, :ng, :] *= -1.0
        data[..., IRU, -ng:, :] *= -1.0
    for k in range(ng):
        data[..., :, ng - 1 - k] = data[..., :, ng + k]
        data[..., :, -ng + k] = data[..., :, -ng - 1 - k]
    data[..., IRW, :, :ng] *= -1.0
    data[..., IRW, :, -ng:] *= -1.0
    return data
