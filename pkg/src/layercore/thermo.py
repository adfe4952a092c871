"""Dry-atmosphere thermodynamics: equation of state, Exner pressure, total energy,
and hydrostatically balanced background profiles.

Conserved state vectors are arrays with the component axis first:
[rho, rho*u, rho*v, rho*w, rho*theta].
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class PhysicalConstants:
    """Model constants (SI). gamma and c0 are derived so the equation-of-state
    identities hold exactly: gamma = cp/cv and c0 = rd^gamma / p0^(rd/cv)."""

    f: float = 1.0e-4   # Coriolis parameter [1/s]
    g: float = 9.81     # gravitational acceleration [m/s^2]
    p0: float = 1.0e5   # reference pressure at sea level [Pa]
    rd: float = 287.0   # gas constant for dry air [J/(K kg)]
    cp: float = 1004.0  # specific heat at constant pressure [J/(K kg)]
    cv: float = 717.0   # specific heat at constant volume [J/(K kg)]
    gamma: float = field(init=False)
    c0: float = field(init=False)

    def __post_init__(self):
        if self.cp != self.cv + self.rd:
            raise ValueError("constants must satisfy cp = cv + rd exactly")
        object.__setattr__(self, "gamma", self.cp / self.cv)
        object.__setattr__(self, "c0",
                           self.rd ** self.gamma / self.p0 ** (self.rd / self.cv))

    def replace(self, **changes) -> "PhysicalConstants":
        return dataclasses.replace(self, **changes)


DEFAULT_CONSTANTS = PhysicalConstants()


def pressure(rho_theta, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Equation of state P = c0 * (rho*theta)^gamma. Strictly increasing in rho*theta."""
    if not np.all(np.asarray(rho_theta) > 0.0):
        raise ValueError("pressure requires rho*theta > 0")
    return constants.c0 * rho_theta ** constants.gamma


def sound_speed_sq(rho, theta, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Squared speed of sound c0 * (rho*theta)^(gamma-1) * gamma * theta.

    Algebraically identical to gamma * P / rho.
    """
    if not (np.all(np.asarray(rho) > 0.0) and np.all(np.asarray(theta) > 0.0)):
        raise ValueError("sound_speed_sq requires rho > 0 and theta > 0")
    c = constants
    return c.c0 * (rho * theta) ** (c.gamma - 1.0) * c.gamma * theta


def exner(p, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Nondimensional Exner pressure (P/p0)^(rd/cp)."""
    if not np.all(np.asarray(p) > 0.0):
        raise ValueError("exner requires P > 0")
    return (p / constants.p0) ** (constants.rd / constants.cp)


def total_energy(state, z, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Specific total energy cv*theta*pi + (u^2+v^2+w^2)/2 + g*z of a conserved state.

    ``state`` has the five conserved components on its leading axis; ``z`` is the
    height of the sample point and must broadcast against the trailing axes.
    """
    rho = state[0]
    if not np.all(np.asarray(rho) > 0.0):
        raise ValueError("total_energy requires rho > 0")
    theta = state[4] / rho
    u = state[1] / rho
    v = state[2] / rho
    w = state[3] / rho
    pi = exner(pressure(state[4], constants), constants)
    return constants.cv * theta * pi + 0.5 * (u * u + v * v + w * w) + constants.g * z


@dataclass(frozen=True)
class ConstantTheta:
    """Neutral background with uniform potential temperature theta0."""

    theta0: float

    def theta(self, z, constants: PhysicalConstants = DEFAULT_CONSTANTS):
        return self.theta0 + np.zeros_like(np.asarray(z, dtype=float))

    def exner(self, z, constants: PhysicalConstants = DEFAULT_CONSTANTS):
        return 1.0 - constants.g * z / (constants.cp * self.theta0)


@dataclass(frozen=True)
class StratifiedTheta:
    """Stable background theta0 * exp(n_freq^2 z / g), n_freq the buoyancy frequency."""

    theta0: float
    n_freq: float

    def __post_init__(self):
        if self.n_freq <= 0.0:
            raise ValueError("n_freq must be positive (use ConstantTheta for N = 0)")

    def theta(self, z, constants: PhysicalConstants = DEFAULT_CONSTANTS):
        c = constants
        return self.theta0 * np.exp(self.n_freq ** 2 * z / c.g)

    def exner(self, z, constants: PhysicalConstants = DEFAULT_CONSTANTS):
        c = constants
        n2 = self.n_freq ** 2
        scale = c.g ** 2 / (c.cp * self.theta0 * n2)
        return 1.0 + scale * (np.exp(-n2 * z / c.g) - 1.0)


def hydrostatic_profile(profile, z, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Balanced (pi, rho) at height z for one of the closed-form backgrounds.

    Only ConstantTheta and StratifiedTheta are supported; hydrostatic balance
    cp*theta*dpi/dz = -g is solved in closed form for those two families, and
    rho = p0/(rd*theta) * pi^(cv/rd).
    """
    if not isinstance(profile, (ConstantTheta, StratifiedTheta)):
        raise TypeError("unsupported background profile: "
                        "expected ConstantTheta or StratifiedTheta")
    pi = profile.exner(z, constants)
    if not np.all(np.asarray(pi) > 0.0):
        raise ValueError("domain too tall for this background: pi(z) <= 0")
    c = constants
    rho = c.p0 / (c.rd * profile.theta(z, constants)) * pi ** (c.cv / c.rd)
    return pi, rho
