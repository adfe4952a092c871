"""Third-order 2D WENO reconstruction: dimension-by-dimension quadratic stencils
plus a cross term from the four corner neighbours.

Each cell gets one polynomial in local coordinates [-1/2, 1/2]^2,

    Q(x,z) = Q0 + Qx*P1(x) + Qxx*P2(x) + Qz*P1(z) + Qzz*P2(z) + Qxz*P1(x)*P1(z),
    P1(s) = s,  P2(s) = s^2 - 1/12,

stored with the six coefficients on the leading axis (see C_MEAN..C_XZ).

Expressions are grouped so that mirror-image data produce bitwise mirror-image
coefficients; the solver relies on this to preserve discrete symmetry exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grid import IRU, IRW, NGHOST, LayerField

C_MEAN, C_X, C_XX, C_Z, C_ZZ, C_XZ = range(6)

# two-point Gauss-Legendre nodes on [-1/2, 1/2]; weights are (1/2, 1/2)
GAUSS_OFFSETS = (-0.5 / np.sqrt(3.0), 0.5 / np.sqrt(3.0))
GAUSS_WEIGHTS = (0.5, 0.5)


@dataclass(frozen=True)
class WenoParams:
    epsilon: float = 1.0e-12
    r_exponent: float = 5.0
    lambda_center: float = 100.0
    lambda_side: float = 1.0

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ConfigError("weno epsilon must be positive")


DEFAULT_WENO = WenoParams()


def _inv_pow(t, r):
    # t = epsilon + IS > 0; fast path for the default integer exponent
    if r == 5.0:
        t2 = t * t
        return 1.0 / (t2 * t2 * t)
    return t ** (-r)


def weno_candidates_1d(q_m2, q_m1, q_0, q_1, q_2):
    """Per-stencil (qx, qxx) for S1={-2,-1,0}, S2={-1,0,1}, S3={0,1,2}."""
    x1 = (1.5 * q_0 - 2.0 * q_m1) + 0.5 * q_m2
    xx1 = 0.5 * ((q_0 - 2.0 * q_m1) + q_m2)
    x2 = 0.5 * (q_1 - q_m1)
    xx2 = 0.5 * ((q_m1 + q_1) - 2.0 * q_0)
    x3 = -((1.5 * q_0 - 2.0 * q_1) + 0.5 * q_2)
    xx3 = 0.5 * ((q_0 - 2.0 * q_1) + q_2)
    return (x1, x2, x3), (xx1, xx2, xx3)


def smoothness_1d(qx, qxx):
    return qx * qx + (13.0 / 3.0) * (qxx * qxx)


def weno_weights_1d(q_m2, q_m1, q_0, q_1, q_2, params: WenoParams = DEFAULT_WENO):
    """Normalized nonlinear weights of the three 1D stencils."""
    (x1, x2, x3), (xx1, xx2, xx3) = weno_candidates_1d(q_m2, q_m1, q_0, q_1, q_2)
    a1 = params.lambda_side * _inv_pow(params.epsilon + smoothness_1d(x1, xx1),
                                       params.r_exponent)
    a2 = params.lambda_center * _inv_pow(params.epsilon + smoothness_1d(x2, xx2),
                                         params.r_exponent)
    a3 = params.lambda_side * _inv_pow(params.epsilon + smoothness_1d(x3, xx3),
                                       params.r_exponent)
    s = (a1 + a3) + a2
    return a1 / s, a2 / s, a3 / s


def weno_1d(q_m2, q_m1, q_0, q_1, q_2, params: WenoParams = DEFAULT_WENO):
    """WENO-combined (qx, qxx) from five cell averages along one direction."""
    (x1, x2, x3), (xx1, xx2, xx3) = weno_candidates_1d(q_m2, q_m1, q_0, q_1, q_2)
    a1 = params.lambda_side * _inv_pow(params.epsilon + smoothness_1d(x1, xx1),
                                       params.r_exponent)
    a2 = params.lambda_center * _inv_pow(params.epsilon + smoothness_1d(x2, xx2),
                                         params.r_exponent)
    a3 = params.lambda_side * _inv_pow(params.epsilon + smoothness_1d(x3, xx3),
                                       params.r_exponent)
    s = (a1 + a3) + a2
    qx = ((a1 * x1 + a3 * x3) + a2 * x2) / s
    qxx = ((a1 * xx1 + a3 * xx3) + a2 * xx2) / s
    return qx, qxx


def cross_candidates(q_pp, q_pm, q_mp, q_mm, q_c, qx, qz, qxx, qzz):
    """The four corner-moment formulas for the mixed coefficient qxz."""
    v1 = ((((q_pp - q_c) - qx) - qz) - qxx) - qzz
    v2 = ((((q_c - q_pm) + qx) - qz) + qxx) + qzz
    v3 = ((((q_c - q_mp) - qx) + qz) + qxx) + qzz
    v4 = ((((q_mm - q_c) + qx) + qz) - qxx) - qzz
    return v1, v2, v3, v4


def _cross_combine(q_pp, q_pm, q_mp, q_mm, q_c, qx, qz, qxx, qzz,
                   params: WenoParams = DEFAULT_WENO):
    v1, v2, v3, v4 = cross_candidates(q_pp, q_pm, q_mp, q_mm, q_c, qx, qz, qxx, qzz)
    base = 4.0 * (qxx * qxx) + 4.0 * (qzz * qzz)
    # equal linear weights: no centered candidate exists among the four corners
    a1 = _inv_pow(params.epsilon + (base + v1 * v1), params.r_exponent)
    a2 = _inv_pow(params.epsilon + (base + v2 * v2), params.r_exponent)
    a3 = _inv_pow(params.epsilon + (base + v3 * v3), params.r_exponent)
    a4 = _inv_pow(params.epsilon + (base + v4 * v4), params.r_exponent)
    s = (a1 + a3) + (a2 + a4)
    return ((a1 * v1 + a3 * v3) + (a2 * v2 + a4 * v4)) / s


def weno_cross_term(neighborhood, qx, qz, qxx, qzz,
                    params: WenoParams = DEFAULT_WENO):
    """Combined qxz from a 3x3 neighborhood of cell averages.

    ``neighborhood[a, b]`` holds the average at offset (a-1, b-1) in (x, z);
    qx..qzz are the already-combined 1D coefficients of the center cell.
    """
    nb = np.asarray(neighborhood)
    return _cross_combine(nb[2, 2], nb[2, 0], nb[0, 2], nb[0, 0], nb[1, 1],
                          qx, qz, qxx, qzz, params)


def reconstruct_field(field, params: WenoParams = DEFAULT_WENO, ng: int = NGHOST):
    """Reconstruct every interior cell of a ghosted field.

    ``field`` is either a LayerField or an array (..., nx+2G, nz+2G) whose last
    two axes are x and z; reconstruction is applied component-wise to whatever
    leading axes are present. Returns coefficients shaped (6, ...) over the full
    ghosted extent with ghost-cell entries zeroed.
    """
    data = np.asarray(field.data if isinstance(field, LayerField) else field)
    if ng < 2:
        raise ConfigError("reconstruction stencils need at least 2 ghost cells")
    nx = data.shape[-2] - 2 * ng
    nz = data.shape[-1] - 2 * ng
    if nx < 1 or nz < 1:
        raise ConfigError("field smaller than its ghost frame")

    def sh(di, dj):
        return data[..., ng + di:ng + di + nx, ng + dj:ng + dj + nz]

    qx, qxx = weno_1d(sh(-2, 0), sh(-1, 0), sh(0, 0), sh(1, 0), sh(2, 0), params)
    qz, qzz = weno_1d(sh(0, -2), sh(0, -1), sh(0, 0), sh(0, 1), sh(0, 2), params)
    qxz = _cross_combine(sh(1, 1), sh(1, -1), sh(-1, 1), sh(-1, -1), sh(0, 0),
                         qx, qz, qxx, qzz, params)

    poly = np.zeros((6,) + data.shape)
    ii = slice(ng, ng + nx)
    jj = slice(ng, ng + nz)
    poly[C_MEAN][..., ii, jj] = sh(0, 0)
    poly[C_X][..., ii, jj] = qx
    poly[C_XX][..., ii, jj] = qxx
    poly[C_Z][..., ii, jj] = qz
    poly[C_ZZ][..., ii, jj] = qzz
    poly[C_XZ][..., ii, jj] = qxz
    return poly


def eval_poly(poly, x_local, z_local):
    """Point value of the reconstruction at local coordinates in [-1/2, 1/2]^2."""
    if np.any(np.abs(x_local) > 0.5) or np.any(np.abs(z_local) > 0.5):
        raise ValueError("local coordinates outside [-1/2, 1/2]")
    p2x = x_local * x_local - 1.0 / 12.0
    p2z = z_local * z_local - 1.0 / 12.0
    return (poly[C_MEAN]
            + poly[C_X] * x_local + poly[C_XX] * p2x
            + poly[C_Z] * z_local + poly[C_ZZ] * p2z
            + poly[C_XZ] * (x_local * z_local))


def fill_poly_ghosts(poly, bc_x: str, bc_z: str, ng: int = NGHOST):
    """Extend reconstructed coefficients into the ghost frame by boundary action.

    ``poly`` is shaped (6, ..., 5, nx+2G, nz+2G). For periodic sides the wrapped
    interior polynomial is copied; for walls the mirror image is taken (odd basis
    coefficients flip sign, and the wall-normal momentum flips sign entirely).
    This equals reconstructing from mirrored/wrapped data, at no extra stencil width.
    """
    if bc_x == "periodic":
        poly[..., :ng, :] = poly[..., -2 * ng:-ng, :]
        poly[..., -ng:, :] = poly[..., ng:2 * ng, :]
    elif bc_x == "wall":
        for k in range(ng):
            poly[..., ng - 1 - k, :] = poly[..., ng + k, :]
            poly[..., -ng + k, :] = poly[..., -ng - 1 - k, :]
        for gx in (slice(None, ng), slice(-ng, None)):
            poly[C_X][..., gx, :] *= -1.0
            poly[C_XZ][..., gx, :] *= -1.0
            poly[:, ..., IRU, gx, :] *= -1.0
    else:
        raise ConfigError(f"bc_x must be 'wall' or 'periodic', got {bc_x!r}")
    if bc_z != "wall":
        raise ConfigError(f"bc_z must be 'wall', got {bc_z!r}")
    for k in range(ng):
        poly[..., :, ng - 1 - k] = poly[..., :, ng + k]
        poly[..., :, -ng + k] = poly[..., :, -ng - 1 - k]
    for gz in (slice(None, ng), slice(-ng, None)):
        poly[C_Z][..., :, gz] *= -1.0
        poly[C_XZ][..., :, gz] *= -1.0
        poly[:, ..., IRW, :, gz] *= -1.0
    return poly
