"""Physical Euler fluxes and the flux-limiter-centered (FLIC) numerical flux.

Numerical fluxes are centered: a GFORCE low-order flux (convex blend of
Lax-Friedrichs and Lax-Wendroff) limited toward Lax-Wendroff by a van Leer
limiter driven by total-energy jumps across neighbouring interfaces. All
functions operate on conserved states with the component axis first and
broadcast over arbitrary trailing shapes, so one code path serves both
single-interface calls and whole-layer sweeps.
"""

from __future__ import annotations

import numpy as np

from . import thermo
from .errors import ConfigError, InadmissibleStateError
from .grid import IRHO, IRU, IRV, IRW, IRT, NGHOST, Grid
from .reconstruct import GAUSS_OFFSETS, GAUSS_WEIGHTS, eval_poly

_MOMENTUM_ROW = {"x": IRU, "y": IRV, "z": IRW}

LIMITER_KINDS = ("van_leer", "none")


def _require_admissible(state, what):
    if not (np.all(state[IRHO] > 0.0) and np.all(state[IRT] > 0.0)):
        raise InadmissibleStateError(f"inadmissible {what}: rho or rho*theta <= 0")


def physical_flux(state, axis: str, constants=thermo.DEFAULT_CONSTANTS):
    """Exact flux of the Euler system along 'x', 'y' or 'z'.

    The z-flux is [rho*w, rho*u*w, rho*v*w, rho*w^2 + P, rho*w*theta]; the
    advective momentum rows follow the same symmetry as the x and y fluxes.
    """
    if axis not in _MOMENTUM_ROW:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    _require_admissible(state, "flux input state")
    row = _MOMENTUM_ROW[axis]
    vel = state[row] / state[IRHO]
    f = state * vel
    f[row] = f[row] + thermo.pressure(state[IRT], constants)
    return f


def lax_friedrichs_flux(flux_fn, q_left, q_right, dt: float, dx: float):
    """0.5*(F(qL) + F(qR) - 0.5*(dx/dt)*(qR - qL))."""
    if dt <= 0.0 or dx <= 0.0:
        raise ValueError("dt and dx must be positive")
    return 0.5 * ((flux_fn(q_left) + flux_fn(q_right))
                  - (0.5 * dx / dt) * (q_right - q_left))


def lax_wendroff_flux(flux_fn, q_left, q_right, dt: float, dx: float):
    """Two-step Richtmyer flux F(Q*), Q* = (qL+qR)/2 - (dt/dx)*(F(qR) - F(qL))."""
    q_star = (0.5 * (q_left + q_right)
              - (dt / dx) * (flux_fn(q_right) - flux_fn(q_left)))
    return flux_fn(q_star)


def gforce_flux(flux_fn, q_left, q_right, dt: float, dx: float, omega: float = 0.5):
    """Convex blend omega*LW + (1-omega)*LF; omega=0.5 is the FORCE flux."""
    if not 0.0 <= omega <= 1.0:
        raise ConfigError(f"gforce omega must lie in [0, 1], got {omega}")
    lw = lax_wendroff_flux(flux_fn, q_left, q_right, dt, dx)
    lf = lax_friedrichs_flux(flux_fn, q_left, q_right, dt, dx)
    return omega * lw + (1.0 - omega) * lf


def van_leer_centered(r, courant):
    """Centered van Leer limiter.

    psi = 0 for r <= 0, 2r/(1+r) for 0 <= r <= 1, and
    phi_g + 2r(1-phi_g)/(1+r) for r >= 1, with phi_g = (1-|c|)/(1+|c|).
    """
    r = np.asarray(r, dtype=float)
    c = np.clip(np.abs(courant), 0.0, 0.999)
    phi_g = (1.0 - c) / (1.0 + c)
    denom = np.where(r > 0.0, 1.0 + r, 1.0)
    low = 2.0 * r / denom
    high = phi_g + (2.0 * r * (1.0 - phi_g)) / denom
    return np.where(r <= 0.0, 0.0, np.where(r <= 1.0, low, high))


def flow_parameters(e_left_prev, e_right_prev, e_left, e_right,
                    e_left_next, e_right_next):
    """Limiter ratios (rL, rR) from total-energy jumps at three interfaces.

    Each pair is (left-extrapolated, right-extrapolated) energy at interfaces
    i-1/2, i+1/2, i+3/2 sampled at matching Gauss points. A vanishing jump at
    the central interface means locally smooth flow and returns the sentinel
    r = 1 (no limiting) rather than an ill-conditioned ratio.
    """
    num_l = e_right_prev - e_left_prev
    num_r = e_right_next - e_left_next
    den = e_right - e_left
    return _safe_ratio(num_l, den), _safe_ratio(num_r, den)


def _safe_ratio(num, den):
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    degenerate = np.abs(den) < 1.0e-14 * np.maximum(1.0, np.abs(num))
    return np.where(degenerate, 1.0, num / np.where(degenerate, 1.0, den))


def flic_flux(flux_fn, q_left, q_right, e_prev, e_center, e_next,
              dt: float, dx: float, courant, omega: float = 0.5):
    """GFORCE + psi*(LW - GFORCE) with psi = min(psi(rL), psi(rR)).

    ``e_prev``, ``e_center``, ``e_next`` are (left, right) total-energy pairs at
    the neighbouring interfaces; psi is a scalar per interface shared by all
    five components.
    """
    r_l, r_r = flow_parameters(e_prev[0], e_prev[1], e_center[0], e_center[1],
                               e_next[0], e_next[1])
    psi = np.minimum(van_leer_centered(r_l, courant), van_leer_centered(r_r, courant))
    lw = lax_wendroff_flux(flux_fn, q_left, q_right, dt, dx)
    lf = lax_friedrichs_flux(flux_fn, q_left, q_right, dt, dx)
    gf = omega * lw + (1.0 - omega) * lf
    return gf + psi * (lw - gf)


def interface_flux_quadrature(poly_left, poly_right, axis: str, flux_fn):
    """Average a numerical flux over one interface with 2-point Gauss quadrature.

    ``poly_left``/``poly_right`` are the reconstruction coefficients of the two
    adjacent cells; ``flux_fn(qL, qR)`` evaluates the flux for one extrapolated
    state pair. Exact for fluxes up to cubic in the transverse coordinate.
    """
    total = 0.0
    for offset, weight in zip(GAUSS_OFFSETS, GAUSS_WEIGHTS):
        if axis == "x":
            q_l = eval_poly(poly_left, 0.5, offset)
            q_r = eval_poly(poly_right, -0.5, offset)
        elif axis == "z":
            q_l = eval_poly(poly_left, offset, 0.5)
            q_r = eval_poly(poly_right, offset, -0.5)
        else:
            raise ValueError(f"axis must be 'x' or 'z', got {axis!r}")
        total = total + weight * flux_fn(q_l, q_r)
    return total


def layer_interface_fluxes(poly, grid: Grid, axis: str, dt: float,
                           omega: float = 0.5, limiter: str = "van_leer",
                           constants=thermo.DEFAULT_CONSTANTS, ng: int = NGHOST):
    """FLIC fluxes averaged over every interface of one sweep direction.

    ``poly`` holds reconstruction coefficients shaped (6, 5, ..., nx+2G, nz+2G)
    with the ghost frame already extended by the boundary action. Returns the
    quadrature-averaged fluxes with shape (5, ..., nx+1, nz) for axis 'x' or
    (5, ..., nx, nz+1) for axis 'z': one entry per interface of the interior,
    applied later with opposite signs to its two neighbours.
    """
    if limiter not in LIMITER_KINDS:
        raise ConfigError(f"limiter must be one of {LIMITER_KINDS}, got {limiter!r}")
    nx = poly.shape[-2] - 2 * ng
    nz = poly.shape[-1] - 2 * ng
    g = ng

    if axis == "x":
        p_l = poly[..., :-1, g:-g]
        p_r = poly[..., 1:, g:-g]
        delta = grid.dx
        # interface runs along z: transverse Gauss points sit at fixed heights
        z_pts = grid.z_centers()[:, None] + np.asarray(GAUSS_OFFSETS) * grid.dz
        q_l = np.stack([eval_poly(p_l, 0.5, s) for s in GAUSS_OFFSETS], axis=-1)
        q_r = np.stack([eval_poly(p_r, -0.5, s) for s in GAUSS_OFFSETS], axis=-1)
        if_axis = -3
    elif axis == "z":
        p_l = poly[..., g:-g, :-1]
        p_r = poly[..., g:-g, 1:]
        delta = grid.dz
        # both sides of a horizontal interface sit at the same height
        n_edges = poly.shape[-1] - 1
        z_edges = grid.z_min + (np.arange(n_edges) - g + 1.0) * grid.dz
        z_pts = z_edges[:, None] + np.zeros(len(GAUSS_OFFSETS))
        q_l = np.stack([eval_poly(p_l, s, 0.5) for s in GAUSS_OFFSETS], axis=-1)
        q_r = np.stack([eval_poly(p_r, s, -0.5) for s in GAUSS_OFFSETS], axis=-1)
        if_axis = -2
    else:
        raise ValueError(f"axis must be 'x' or 'z', got {axis!r}")

    _require_admissible(q_l, f"{axis}-interface left state")
    _require_admissible(q_r, f"{axis}-interface right state")
    e_l = thermo.total_energy(q_l, z_pts, constants)
    e_r = thermo.total_energy(q_r, z_pts, constants)

    def cut(arr, lo, hi):
        index = [slice(None)] * arr.ndim
        index[if_axis] = slice(lo, hi)
        return arr[tuple(index)]

    q_lc = cut(q_l, 1, -1)
    q_rc = cut(q_r, 1, -1)
    jumps = e_r - e_l
    r_l = _safe_ratio(cut(jumps, 0, -2), cut(jumps, 1, -1))
    r_r = _safe_ratio(cut(jumps, 2, jumps.shape[if_axis]), cut(jumps, 1, -1))

    row = _MOMENTUM_ROW[axis]
    q_bar = 0.5 * (q_lc + q_rc)
    theta_bar = q_bar[IRT] / q_bar[IRHO]
    cs_bar = np.sqrt(thermo.sound_speed_sq(q_bar[IRHO], theta_bar, constants))
    vel_n = np.abs(q_bar[row] / q_bar[IRHO])
    courant = np.clip(dt * (vel_n + cs_bar) / delta, 0.0, 0.999)

    if limiter == "van_leer":
        psi = np.minimum(van_leer_centered(r_l, courant),
                         van_leer_centered(r_r, courant))
    else:
        psi = 0.0

    f_l = physical_flux(q_lc, axis, constants)
    f_r = physical_flux(q_rc, axis, constants)
    lf = 0.5 * ((f_l + f_r) - (0.5 * delta / dt) * (q_rc - q_lc))
    q_star = 0.5 * (q_lc + q_rc) - (dt / delta) * (f_r - f_l)
    _require_admissible(q_star, f"{axis}-interface Lax-Wendroff state")
    lw = physical_flux(q_star, axis, constants)
    gf = omega * lw + (1.0 - omega) * lf
    flic = gf + psi * (lw - gf)
    return GAUSS_WEIGHTS[0] * flic[..., 0] + GAUSS_WEIGHTS[1] * flic[..., 1]
