"""Case catalog and initialization tests."""

import numpy as np
import pytest

from layercore import cases, thermo
from layercore.errors import ConfigError
from layercore.grid import IRHO, IRU, IRV, IRW, IRT

C = thermo.DEFAULT_CONSTANTS


class TestCatalog:
    def test_four_entries(self):
        ids = [cfg.case_id for cfg in cases.case_catalog()]
        assert ids == list(cases.CASE_IDS)

    def test_bubble_defaults(self):
        cfg = cases.default_config("bubble")
        assert (cfg.nx, cfg.nz) == (160, 80)
        assert cfg.dx == 125.0 and cfg.dz == 125.0
        assert cfg.bc_x == "wall" and cfg.bc_z == "wall"
        assert cfg.tf == 1000.0
        assert cfg.n_layers == 2 and cfg.cfl == 0.4

    def test_igw_defaults(self):
        cfg = cases.default_config("igw")
        assert (cfg.nx, cfg.nz) == (600, 20)
        assert cfg.dx == 500.0 and cfg.dz == 500.0
        assert (cfg.x_min, cfg.x_max) == (0.0, 300000.0)
        assert cfg.tf == 3000.0

    def test_shear_final_time(self):
        assert cases.default_config("shear").tf == 300.0

    def test_hot_cold_shares_bubble_domain(self):
        a, b = cases.default_config("bubble"), cases.default_config("hot_cold")
        assert (a.x_min, a.lx, a.lz, a.ly, a.nx, a.nz) == \
               (b.x_min, b.lx, b.lz, b.ly, b.nx, b.nz)
        assert b.bc_x == "periodic"

    def test_unknown_case(self):
        with pytest.raises(ConfigError):
            cases.default_config("tornado")


class TestPerturbations:
    def test_bubble_center_value(self):
        assert cases.cosine_bubble(0.0, 2000.0, 10.0, 0.0, 2000.0) == 10.0

    def test_bubble_compact_support(self):
        x = np.linspace(-10000.0, 10000.0, 201)
        z = np.linspace(0.0, 10000.0, 101)
        X, Z = np.meshgrid(x, z, indexing="ij")
        pert = cases.cosine_bubble(X, Z, 10.0, 0.0, 2000.0)
        dist = np.sqrt(X ** 2 + (Z - 2000.0) ** 2) / 2000.0
        assert np.all(pert[dist > 1.0] == 0.0)
        assert np.all(pert[dist <= 1.0] >= 0.0)

    def test_bubble_edge_continuous(self):
        assert cases.cosine_bubble(2000.0, 2000.0, 10.0, 0.0, 2000.0) == \
            pytest.approx(0.0, abs=1e-12)

    def test_igw_ridge_peak(self):
        assert cases.igw_ridge(100000.0, 5000.0, 100000.0, 10000.0) == \
            pytest.approx(10.0, rel=1e-15)

    def test_igw_ridge_half_width(self):
        # one half-width off center: denominator 2
        assert cases.igw_ridge(105000.0, 5000.0, 100000.0, 10000.0) == \
            pytest.approx(5.0, rel=1e-12)

    def test_shear_wind_profile(self):
        assert cases.shear_wind(0.0, 10000.0) == 0.0
        assert cases.shear_wind(10000.0, 10000.0) == \
            pytest.approx(50.0 * np.sqrt(np.log(2.0)), rel=1e-14)


class TestInitCase:
    def test_bubble_init_fields(self):
        cfg = cases.default_config("bubble").replace(nx=32, nz=16)
        stack = cases.init_case(cfg)
        q = stack.interior
        # at rest
        assert np.all(q[:, IRU] == 0.0) and np.all(q[:, IRV] == 0.0)
        assert np.all(q[:, IRW] == 0.0)
        # density is the background: identical in both layers and x-uniform
        assert np.array_equal(q[0, IRHO], q[1, IRHO])
        assert np.all(q[0, IRHO] == q[0, IRHO][:1, :])
        # layer 2 unperturbed
        theta2 = q[1, IRT] / q[1, IRHO]
        assert np.max(np.abs(theta2 - 300.0)) < 1e-12

    def test_density_not_reperturbed(self):
        cfg = cases.default_config("bubble").replace(nx=32, nz=16)
        stack = cases.init_case(cfg)
        zc = cfg.grid().z_centers()
        _, rho_ref = thermo.hydrostatic_profile(thermo.ConstantTheta(300.0), zc)
        assert np.max(np.abs(stack.interior[0, IRHO] - rho_ref[None, :])) == 0.0

    def test_balanced_start_residual(self):
        # analytic-derivative oracle: cp*theta_bar*dpi/dz + g at cell centers
        cfg = cases.default_config("shear").replace(nx=8, nz=40)
        stack = cases.init_case(cfg)
        zc = cfg.grid().z_centers()
        for prof in stack.profiles:
            if isinstance(prof, thermo.ConstantTheta):
                dpi_dz = -C.g / (C.cp * prof.theta0) * np.ones_like(zc)
            else:
                n2 = prof.n_freq ** 2
                dpi_dz = -(C.g / (C.cp * prof.theta0)) * np.exp(-n2 * zc / C.g)
            residual = C.cp * prof.theta(zc) * dpi_dz + C.g
            assert np.max(np.abs(residual)) < 1e-10

    def test_bubble_symmetry_bitwise(self):
        cfg = cases.default_config("bubble").replace(nx=40, nz=20)
        stack = cases.init_case(cfg)
        q = stack.interior
        assert np.max(np.abs(q - q[:, :, ::-1, :])) <= 1e-15  # all-even at rest

    def test_hot_cold_velocities_and_perturbations(self):
        cfg = cases.default_config("hot_cold").replace(nx=40, nz=20)
        stack = cases.init_case(cfg)
        q = stack.interior
        u = q[:, IRU] / q[:, IRHO]
        assert np.max(np.abs(u - 20.0)) < 1e-13
        theta1 = q[0, IRT] / q[0, IRHO]
        theta2 = q[1, IRT] / q[1, IRHO]
        assert theta1.max() > 309.0 and theta1.min() == pytest.approx(300.0)
        assert theta2.min() < 286.0 and theta2.max() == pytest.approx(300.0)
        # cold bubble sits high, hot bubble low
        assert np.argmax(300.0 - theta2.min(axis=0)) > np.argmax(theta1.max(axis=0))

    def test_shear_init(self):
        cfg = cases.default_config("shear").replace(nx=16, nz=24)
        stack = cases.init_case(cfg)
        q = stack.interior
        v = q[:, IRV] / q[:, IRHO]
        assert np.max(np.abs(v[0] - 10.0)) < 1e-13
        assert np.max(np.abs(v[1] + 10.0)) < 1e-13
        u1 = q[0, IRU] / q[0, IRHO]
        zc = cfg.grid().z_centers()
        assert np.max(np.abs(u1 - cases.shear_wind(zc, cfg.lz)[None, :])) < 1e-12
        assert np.all(q[1, IRU] == 0.0)
        # layer 2 is stably stratified
        theta2 = q[1, IRT] / q[1, IRHO]
        assert np.all(np.diff(theta2[0]) > 0.0)

    def test_igw_variants(self):
        base = cases.default_config("igw").replace(nx=60, nz=10)
        for variant, pert_layer, wind in (("layer1", 0, (20.0, 0.0)),
                                          ("layer2", 1, (0.0, -20.0))):
            stack = cases.init_case(base.replace(run_variant=variant))
            q = stack.interior
            u = q[:, IRU] / q[:, IRHO]
            assert np.max(np.abs(u[0] - wind[0])) < 1e-13
            assert np.max(np.abs(u[1] - wind[1])) < 1e-13
            prof = stack.profiles[pert_layer]
            zc = base.grid().z_centers()
            theta = q[pert_layer, IRT] / q[pert_layer, IRHO]
            pert = theta - prof.theta(zc)[None, :]
            assert pert.max() > 1.0
            other = q[1 - pert_layer, IRT] / q[1 - pert_layer, IRHO]
            other_pert = other - stack.profiles[1 - pert_layer].theta(zc)[None, :]
            assert np.max(np.abs(other_pert)) < 1e-12

        combined = cases.init_case(base.replace(run_variant="combined"))
        q = combined.interior
        u = q[:, IRU] / q[:, IRHO]
        assert np.max(np.abs(u[0] - 20.0)) < 1e-13
        assert np.max(np.abs(u[1] + 20.0)) < 1e-13

    def test_igw_ridge_centers(self):
        base = cases.default_config("igw").replace(nx=120, nz=10)
        xc = base.grid().x_centers()
        zc = base.grid().z_centers()
        stack = cases.init_case(base.replace(run_variant="combined"))
        q = stack.interior
        for layer, x_center in ((0, 100000.0), (1, 200000.0)):
            theta = q[layer, IRT] / q[layer, IRHO]
            pert = theta - stack.profiles[layer].theta(zc)[None, :]
            i, _ = np.unravel_index(np.argmax(pert), pert.shape)
            assert abs(xc[i] - x_center) <= base.dx

    def test_bad_variant(self):
        with pytest.raises(ConfigError):
            cases.init_case(cases.default_config("igw").replace(run_variant="both"))

    def test_center_outside_domain(self):
        cfg = cases.default_config("bubble").replace(lz=1500.0, nz=12)
        with pytest.raises(ConfigError):
            cases.init_case(cfg)

    def test_unknown_case_id(self):
        cfg = cases.default_config("bubble").replace(case_id="vortex")
        with pytest.raises(ConfigError):
            cases.init_case(cfg)
