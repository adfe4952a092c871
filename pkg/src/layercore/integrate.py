"""Time integration: CFL step control, the semi-discrete spatial operator,
TVD-RK3 stepping, and Strang splitting of transport and sources."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import coupling, thermo
from .errors import InadmissibleStateError, StepRejectedError
from .flux import layer_interface_fluxes
from .grid import IRHO, IRU, IRW, IRT, LayerStack, fill_ghosts
from .reconstruct import DEFAULT_WENO, WenoParams, fill_poly_ghosts, reconstruct_field

log = logging.getLogger("layercore")


@dataclass(frozen=True)
class SchemeParams:
    """Numerical-scheme knobs threaded through the stepping routines."""

    weno: WenoParams = DEFAULT_WENO
    omega: float = 0.5
    limiter: str = "van_leer"
    constants: thermo.PhysicalConstants = thermo.DEFAULT_CONSTANTS


DEFAULT_SCHEME = SchemeParams()


@dataclass
class StepContext:
    """Marching state of the driver loop."""

    dt: float
    cfl: float
    t: float = 0.0
    step_index: int = 0


def compute_dt(stack: LayerStack, cfl: float,
               constants=thermo.DEFAULT_CONSTANTS) -> float:
    """cfl * dx / max(|vel - cs|, |vel + cs|) over all cells, vel = sqrt(u^2+w^2)."""
    q = stack.interior
    rho = q[:, IRHO]
    vel = np.sqrt((q[:, IRU] / rho) ** 2 + (q[:, IRW] / rho) ** 2)
    cs = np.sqrt(thermo.sound_speed_sq(rho, q[:, IRT] / rho, constants))
    speed = float(np.max(np.maximum(np.abs(vel - cs), np.abs(vel + cs))))
    if not np.isfinite(speed) or speed <= 0.0:
        raise ValueError("non-finite wave speed; state corrupted")
    return cfl * stack.grid.dx / speed


def spatial_operator(stack: LayerStack, dt: float, bc_x: str, bc_z: str,
                     scheme: SchemeParams = DEFAULT_SCHEME):
    """Flux-divergence tendency L of the transport part, per layer and cell.

    Ghost cells of ``stack`` must already be filled; ``dt`` enters only as the
    parameter of the centered fluxes. Returns (n_layers, 5, nx, nz).
    """
    poly = reconstruct_field(stack.data, scheme.weno, stack.ng)
    fill_poly_ghosts(poly, bc_x, bc_z, stack.ng)
    pv = np.moveaxis(poly, 2, 1)  # (6, 5, n_layers, NX, NZ)
    fx = layer_interface_fluxes(pv, stack.grid, "x", dt, scheme.omega,
                                scheme.limiter, scheme.constants, stack.ng)
    hz = layer_interface_fluxes(pv, stack.grid, "z", dt, scheme.omega,
                                scheme.limiter, scheme.constants, stack.ng)
    tend = (-(fx[:, :, 1:, :] - fx[:, :, :-1, :]) / stack.grid.dx
            - (hz[:, :, :, 1:] - hz[:, :, :, :-1]) / stack.grid.dz)
    return np.moveaxis(tend, 0, 1)


def source_operator(stack: LayerStack, coupling_form: str = "derived",
                    scheme: SchemeParams = DEFAULT_SCHEME):
    """Coupling plus rotation/gravity source, per layer and cell."""
    states = np.moveaxis(stack.interior, 1, 0)
    src = (coupling.coupling_source(stack, form=coupling_form,
                                    constants=scheme.constants)
           + coupling.physical_source(states, scheme.constants))
    return np.moveaxis(src, 0, 1)


def rk3_step(state, rhs, dt: float, stage_check=None):
    """One step of the three-stage TVD Runge-Kutta scheme.

    state may be any array-like; ``rhs(state)`` returns the tendency. If given,
    ``stage_check`` is called on every stage value and may raise to reject it.
    """
    q1 = state + dt * rhs(state)
    if stage_check is not None:
        stage_check(q1)
    q2 = 0.75 * state + 0.25 * q1 + 0.25 * dt * rhs(q1)
    if stage_check is not None:
        stage_check(q2)
    q3 = (1.0 / 3.0) * state + (2.0 / 3.0) * q2 + (2.0 / 3.0) * dt * rhs(q2)
    if stage_check is not None:
        stage_check(q3)
    return q3


def _interior_stage_check(ng: int):
    def check(data):
        core = data[:, :, ng:-ng, ng:-ng]
        if not (np.all(core[:, IRHO] > 0.0) and np.all(core[:, IRT] > 0.0)):
            raise InadmissibleStateError("inadmissible Runge-Kutta stage state")
    return check


def conservation_step(stack: LayerStack, dt: float, bc_x: str, bc_z: str,
                      scheme: SchemeParams = DEFAULT_SCHEME) -> LayerStack:
    """Advance the transport part by dt with RK3; input stack is not modified."""
    work = stack.copy()
    g = work.ng

    def rhs(data):
        fill_ghosts(data, bc_x, bc_z, g)
        tend = spatial_operator(work.with_data(data), dt, bc_x, bc_z, scheme)
        full = np.zeros_like(data)
        full[:, :, g:-g, g:-g] = tend
        return full

    return work.with_data(rk3_step(work.data, rhs, dt, _interior_stage_check(g)))


def source_step(stack: LayerStack, dt: float, coupling_form: str = "derived",
                scheme: SchemeParams = DEFAULT_SCHEME) -> LayerStack:
    """Advance the source part (coupling + rotation/gravity) by dt with RK3."""
    work = stack.copy()
    g = work.ng

    def rhs(data):
        tend = source_operator(work.with_data(data), coupling_form, scheme)
        full = np.zeros_like(data)
        full[:, :, g:-g, g:-g] = tend
        return full

    return work.with_data(rk3_step(work.data, rhs, dt, _interior_stage_check(g)))


def strang_step(stack: LayerStack, dt: float, bc_x: str, bc_z: str,
                coupling_form: str = "derived",
                scheme: SchemeParams = DEFAULT_SCHEME,
                max_retries: int = 10):
    """One Strang-split step: half source, full transport, half source.

    An inadmissible stage anywhere rejects the whole step; it is retried from
    the pre-step state with dt halved, up to ``max_retries`` times. Returns
    (new_stack, dt_used).
    """
    dt_try = dt
    for attempt in range(max_retries + 1):
        try:
            half = source_step(stack, 0.5 * dt_try, coupling_form, scheme)
            full = conservation_step(half, dt_try, bc_x, bc_z, scheme)
            out = source_step(full, 0.5 * dt_try, coupling_form, scheme)
            return out, dt_try
        except InadmissibleStateError as err:
            log.warning("step rejected (attempt %d, dt=%.6g): %s",
                        attempt + 1, dt_try, err)
            dt_try *= 0.5
    raise StepRejectedError(
        f"step failed after {max_retries} dt halvings (last dt {dt_try:.3e})")
