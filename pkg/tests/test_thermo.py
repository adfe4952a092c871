"""Equation-of-state, Exner, energy, and hydrostatic-profile tests."""

import numpy as np
import pytest

from layercore import thermo

C = thermo.DEFAULT_CONSTANTS


def random_states(n, seed=0):
    rng = np.random.default_rng(seed)
    rho = rng.uniform(0.05, 2.0, n)
    theta = rng.uniform(200.0, 500.0, n)
    return rho, theta


class TestConstants:
    def test_paper_values(self):
        assert (C.f, C.g, C.p0, C.rd, C.cp, C.cv) == (1e-4, 9.81, 1e5, 287.0, 1004.0, 717.0)

    def test_identities(self):
        assert C.cp == C.cv + C.rd
        assert C.gamma == C.cp / C.cv
        assert C.c0 == C.rd ** C.gamma / C.p0 ** (C.rd / C.cv)

    def test_inconsistent_heats_rejected(self):
        with pytest.raises(ValueError):
            thermo.PhysicalConstants(cp=1000.0)


class TestPressure:
    def test_reference_state_recovers_p0(self):
        # c0 * (p0/rd)^gamma = p0^(gamma - rd/cv) = p0 because gamma*cv = cp = cv + rd
        assert thermo.pressure(C.p0 / C.rd) == pytest.approx(1.0e5, rel=1e-12)

    def test_surface_density_oracle(self):
        # oracle: rho at the surface reference is p0/(rd*300); the rounded value
        # 1.16144 reproduces p0 to better than 1e-6 relative
        assert thermo.pressure(300.0 * 1.16144) == pytest.approx(1.0e5, rel=1e-6)

    def test_small_argument_limit(self):
        # power law: P ~ (rho*theta)^1.4 -> 0
        assert thermo.pressure(1e-12) < 1e-14
        assert thermo.pressure(1e-20) < thermo.pressure(1e-12)

    def test_monotone(self):
        rt = np.linspace(0.5, 500.0, 100)
        p = thermo.pressure(rt)
        assert np.all(np.diff(p) > 0)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            thermo.pressure(0.0)
        with pytest.raises(ValueError):
            thermo.pressure(np.array([1.0, -2.0]))


class TestSoundSpeed:
    def test_surface_value(self):
        # oracle: cs^2 = gamma*rd*T at pi=1, T = theta = 300
        rho = C.p0 / (C.rd * 300.0)
        cs = np.sqrt(thermo.sound_speed_sq(rho, 300.0))
        assert cs == pytest.approx(np.sqrt(C.gamma * C.rd * 300.0), rel=1e-12)
        assert cs == pytest.approx(347.2233, abs=1e-3)

    def test_identity_gamma_p_over_rho(self):
        rho, theta = random_states(1000)
        cs2 = thermo.sound_speed_sq(rho, theta)
        ref = C.gamma * thermo.pressure(rho * theta) / rho
        assert np.max(np.abs(cs2 / ref - 1.0)) < 1e-12

    def test_linear_in_theta_at_fixed_rho_theta(self):
        rho, theta = 1.2, 320.0
        cs2 = thermo.sound_speed_sq(rho, theta)
        cs2_doubled = thermo.sound_speed_sq(rho / 2.0, 2.0 * theta)
        assert cs2_doubled == pytest.approx(2.0 * cs2, rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            thermo.sound_speed_sq(-1.0, 300.0)
        with pytest.raises(ValueError):
            thermo.sound_speed_sq(1.0, 0.0)


class TestExner:
    def test_reference(self):
        assert thermo.exner(C.p0) == 1.0

    def test_inverse_power(self):
        p = 0.674303 ** (C.cp / C.rd) * C.p0
        assert thermo.exner(p) == pytest.approx(0.674303, abs=1e-9)

    def test_round_trip_identity(self):
        rng = np.random.default_rng(1)
        rt = rng.uniform(10.0, 400.0, 1000)
        lhs = thermo.exner(thermo.pressure(rt))
        rhs = (C.rd * rt / C.p0) ** (C.rd / C.cv)
        assert np.max(np.abs(lhs / rhs - 1.0)) < 1e-12

    def test_eos_consistency(self):
        rng = np.random.default_rng(2)
        rt = rng.uniform(10.0, 400.0, 1000)
        p = thermo.pressure(rt)
        assert np.max(np.abs(thermo.exner(p) ** (C.cp / C.rd) * C.p0 / p - 1.0)) < 1e-12

    def test_domain_error(self):
        with pytest.raises(ValueError):
            thermo.exner(-5.0)


def surface_state(u=0.0, v=0.0, w=0.0):
    rho = C.p0 / (C.rd * 300.0)
    return np.array([rho, rho * u, rho * v, rho * w, rho * 300.0])


class TestTotalEnergy:
    def test_rest_surface(self):
        # cv*theta*pi with pi = 1 exactly at the reference state
        assert thermo.total_energy(surface_state(), 0.0) == pytest.approx(215100.0, rel=1e-12)

    def test_kinetic_increment(self):
        e0 = thermo.total_energy(surface_state(), 0.0)
        e1 = thermo.total_energy(surface_state(u=10.0), 0.0)
        assert e1 - e0 == pytest.approx(50.0, rel=1e-9)

    def test_potential_increment(self):
        e0 = thermo.total_energy(surface_state(), 0.0)
        e1 = thermo.total_energy(surface_state(), 1000.0)
        assert e1 - e0 == pytest.approx(9810.0, rel=1e-12)

    def test_domain_error(self):
        bad = surface_state()
        bad[0] = -1.0
        with pytest.raises((ValueError, RuntimeError)):
            thermo.total_energy(bad, 0.0)


class TestHydrostaticProfile:
    def test_constant_theta_exner(self):
        pi, _ = thermo.hydrostatic_profile(thermo.ConstantTheta(300.0), 10000.0)
        assert pi == pytest.approx(1.0 - 9.81e4 / (1004.0 * 300.0), rel=1e-12)
        assert pi == pytest.approx(0.674303, abs=1e-6)

    def test_surface_density(self):
        pi, rho = thermo.hydrostatic_profile(thermo.ConstantTheta(300.0), 0.0)
        assert pi == 1.0
        assert rho == pytest.approx(1.16144, abs=1e-4)

    def test_stratified_surface(self):
        pi, _ = thermo.hydrostatic_profile(thermo.StratifiedTheta(300.0, 0.01), 0.0)
        assert pi == pytest.approx(1.0, abs=1e-15)

    def test_too_tall_domain(self):
        with pytest.raises(ValueError):
            thermo.hydrostatic_profile(thermo.ConstantTheta(300.0), 40000.0)

    def test_unsupported_profile(self):
        with pytest.raises(TypeError):
            thermo.hydrostatic_profile(lambda z: 300.0, 100.0)

    def test_discrete_residual_bound(self):
        # first-order finite difference of the closed form; bound g*h/(2*scale height)
        theta0 = 300.0
        h = 50.0
        z = np.arange(0.0, 9000.0, h)
        pi, _ = thermo.hydrostatic_profile(thermo.ConstantTheta(theta0), z)
        pi_up, _ = thermo.hydrostatic_profile(thermo.ConstantTheta(theta0), z + h)
        residual = C.cp * theta0 * (pi_up - pi) / h + C.g
        scale_height = C.cp * theta0 / C.g
        assert np.max(np.abs(residual)) <= C.g * h / (2.0 * scale_height)

    def test_stratified_residual(self):
        # the stratified closed form also satisfies cp*theta*dpi/dz = -g analytically
        prof = thermo.StratifiedTheta(300.0, 0.01)
        z = np.linspace(0.0, 10000.0, 41)
        h = 1e-3
        pi_up, _ = thermo.hydrostatic_profile(prof, z + h)
        pi_dn, _ = thermo.hydrostatic_profile(prof, z - h)
        residual = C.cp * prof.theta(z) * (pi_up - pi_dn) / (2.0 * h) + C.g
        assert np.max(np.abs(residual)) < 1e-6
