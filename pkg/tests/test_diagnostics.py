"""Audit correctness and purity."""

import numpy as np
import pytest

from layercore import cases, diagnostics, thermo
from layercore.grid import Grid, IRHO, IRU, IRT, empty_stack


def uniform_rest_stack(theta=300.0):
    grid = Grid(6, 4, 100.0, 100.0)
    stack = empty_stack(grid, 20000.0, 2)
    stack.interior[:, IRHO] = 1.2
    stack.interior[:, IRT] = 1.2 * theta
    return stack


class TestAudit:
    def test_identical_layers_zero_residual(self):
        rec = diagnostics.audit(uniform_rest_stack(), 0.0)
        assert rec.max_abs_residual_theta == 0.0

    def test_uniform_extrema(self):
        rec = diagnostics.audit(uniform_rest_stack(305.0), 1.0)
        for k in range(2):
            assert rec.theta_min[k] == pytest.approx(305.0, rel=1e-13)
            assert rec.theta_max[k] == pytest.approx(305.0, rel=1e-13)
            assert rec.u_min[k] == 0.0 and rec.u_max[k] == 0.0

    def test_total_mass_formula(self):
        stack = uniform_rest_stack()
        rec = diagnostics.audit(stack, 0.0)
        cell = 100.0 * 100.0 * stack.dy
        assert rec.total_mass == pytest.approx(2 * 6 * 4 * 1.2 * cell, rel=1e-13)

    def test_energy_sums_exactly(self):
        cfg = cases.default_config("bubble").replace(nx=16, nz=8)
        rec = diagnostics.audit(cases.init_case(cfg), 0.0)
        assert rec.total_energy == sum(rec.energy_per_layer)

    def test_energy_matches_direct_sum(self):
        stack = uniform_rest_stack()
        rec = diagnostics.audit(stack, 0.0)
        zc = stack.grid.z_centers()
        state = np.array([1.2, 0.0, 0.0, 0.0, 1.2 * 300.0])
        e = thermo.total_energy(state[:, None], zc)  # (nz,)
        expect = (1.2 * e).sum() * 6 * 100.0 * 100.0 * stack.dy
        assert rec.energy_per_layer[0] == pytest.approx(expect, rel=1e-13)

    def test_bubble_initial_extrema(self):
        cfg = cases.default_config("bubble").replace(nx=80, nz=40)
        stack = cases.init_case(cfg)
        rec = diagnostics.audit(stack, 0.0)
        # oracle: warmest cell center is (±dx/2, 2000 ± dz/2)
        ell = np.hypot(125.0, 125.0) / 2000.0
        expected_max = 300.0 + 10.0 * np.cos(0.5 * np.pi * ell)
        assert rec.theta_max[0] == pytest.approx(expected_max, rel=1e-12)
        assert rec.theta_max[1] == pytest.approx(300.0, rel=1e-12)
        assert rec.max_abs_residual_theta == pytest.approx(expected_max - 300.0, rel=1e-12)

    def test_audit_is_pure(self):
        stack = uniform_rest_stack()
        before = stack.data.copy()
        diagnostics.audit(stack, 0.0)
        assert np.array_equal(stack.data, before)

    def test_single_layer_residual(self):
        grid = Grid(4, 4, 10.0, 10.0)
        stack = empty_stack(grid, 100.0, 1)
        stack.interior[:, IRHO] = 1.0
        stack.interior[:, IRT] = 300.0
        rec = diagnostics.audit(stack, 0.0)
        assert rec.max_abs_residual_theta == 0.0
        assert len(rec.energy_per_layer) == 1

    def test_u_extrema(self):
        stack = uniform_rest_stack()
        stack.interior[0, IRU, 2, 1] = 1.2 * 9.0
        stack.interior[1, IRU, 3, 2] = -1.2 * 5.0
        rec = diagnostics.audit(stack, 0.0)
        assert rec.u_max[0] == pytest.approx(9.0, rel=1e-13)
        assert rec.u_min[1] == pytest.approx(-5.0, rel=1e-13)
