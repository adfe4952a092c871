"""Inter-layer coupling: characteristic splitting of the crosswise flux, ghost
wall states, and the combined coupling + rotation/gravity source.

The crosswise flux G(Q) = C(Q) Q is split by the sign of the characteristic
speeds into closed forms (valid in the low-Mach regime |v| << cs):

    G+(Q) = (v + cs/sqrt(gamma))/2 * [rho, rho*u, rho*(v + cs/sqrt(gamma)), rho*w, rho*theta]
    G-(Q) = (v - cs/sqrt(gamma))/2 * [rho, rho*u, rho*(v - cs/sqrt(gamma)), rho*w, rho*theta]

so the interface flux between layers k and k+1 is G+(Q_k) + G-(Q_{k+1}), with
mirror ghost layers at the two side walls.
"""

from __future__ import annotations

import warnings

import numpy as np

from . import thermo
from .errors import ConfigError
from .grid import IRHO, IRU, IRV, IRW, IRT, LayerStack

COUPLING_FORMS = ("derived", "paper_literal")


class LowMachWarning(UserWarning):
    """Crosswise velocity reached the characteristic speed; the closed-form
    splitting assumes |v| << cs and is formally invalid there."""


def _split(state, sign: float, constants):
    rho = state[IRHO]
    if not (np.all(rho > 0.0) and np.all(state[IRT] > 0.0)):
        raise ValueError("flux splitting requires an admissible state")
    v = state[IRV] / rho
    theta = state[IRT] / rho
    cs = np.sqrt(thermo.sound_speed_sq(rho, theta, constants))
    c_char = cs / np.sqrt(constants.gamma)
    if np.any(np.abs(v) >= c_char):
        warnings.warn("|v| >= cs/sqrt(gamma): low-Mach splitting assumption violated",
                      LowMachWarning, stacklevel=3)
    shifted = v + sign * c_char
    lam = 0.5 * shifted
    out = np.empty_like(state, dtype=float)
    out[IRHO] = lam * state[IRHO]
    out[IRU] = lam * state[IRU]
    out[IRV] = lam * (rho * shifted)
    out[IRW] = lam * state[IRW]
    out[IRT] = lam * state[IRT]
    return out


def split_flux_plus(state, constants=thermo.DEFAULT_CONSTANTS):
    """Outgoing (positive-speed) part of the crosswise flux."""
    return _split(state, 1.0, constants)


def split_flux_minus(state, constants=thermo.DEFAULT_CONSTANTS):
    """Incoming (negative-speed) part of the crosswise flux."""
    return _split(state, -1.0, constants)


def ghost_layer_state(state, side: str = "bottom"):
    """Solid-wall ghost value: crosswise momentum mirrored, all else copied.

    Both walls use the same mirror; ``side`` is kept for call-site clarity.
    """
    if side not in ("bottom", "top"):
        raise ValueError(f"side must be 'bottom' or 'top', got {side!r}")
    out = np.array(state, dtype=float, copy=True)
    out[IRV] = -out[IRV]
    return out


def physical_source(state, constants=thermo.DEFAULT_CONSTANTS):
    """Rotation and gravity source [0, f*rho*v, -f*rho*u, -rho*g, 0]."""
    out = np.zeros_like(np.asarray(state, dtype=float))
    out[IRU] = constants.f * state[IRV]
    out[IRV] = -constants.f * state[IRU]
    out[IRW] = -constants.g * state[IRHO]
    return out


def crosswise_interface_fluxes(states, constants=thermo.DEFAULT_CONSTANTS):
    """Upwind crosswise fluxes at the n_layers+1 layer interfaces.

    ``states`` is (5, n_layers, ...); entry k of the result is the flux through
    the interface below layer k (wall interfaces use mirror ghost layers).
    """
    n_layers = states.shape[1]
    ghat = np.empty((5, n_layers + 1) + states.shape[2:])
    bottom = ghost_layer_state(states[:, 0], "bottom")
    top = ghost_layer_state(states[:, -1], "top")
    ghat[:, 0] = split_flux_plus(bottom, constants) + split_flux_minus(states[:, 0], constants)
    for k in range(1, n_layers):
        ghat[:, k] = (split_flux_plus(states[:, k - 1], constants)
                      + split_flux_minus(states[:, k], constants))
    ghat[:, n_layers] = (split_flux_plus(states[:, -1], constants)
                         + split_flux_minus(top, constants))
    return ghat


def coupling_source(stack: LayerStack, index=None, form: str = "derived",
                    constants=thermo.DEFAULT_CONSTANTS):
    """Per-layer source from the crosswise flux divergence.

    The default 'derived' form is -(1/dy) * (G_hat_above - G_hat_below), which
    telescopes across layers (wall interfaces carry no mass or rho*theta flux).
    'paper_literal' applies +dy * (G_hat_above - G_hat_below) instead. Returns
    (5, n_layers, nx, nz), or the per-layer values at one (i, j) if ``index``
    is given.
    """
    if form not in COUPLING_FORMS:
        raise ConfigError(f"coupling_form must be one of {COUPLING_FORMS}, got {form!r}")
    states = np.moveaxis(stack.interior, 1, 0)  # (5, n_layers, nx, nz)
    if index is not None:
        i, j = index
        states = states[:, :, i:i + 1, j:j + 1]
    ghat = crosswise_interface_fluxes(states, constants)
    div = ghat[:, 1:] - ghat[:, :-1]
    if form == "derived":
        src = -div / stack.dy
    else:
        src = stack.dy * div
    if index is not None:
        return src[:, :, 0, 0]
    return src
