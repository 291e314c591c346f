import math

import numpy as np
import pytest

from hdelaunay.geomk import (
    ProfileSample,
    ProjectionPoleError,
    TrigDomainError,
    embed_profile,
    finite_difference_derivative,
    ktrig,
    mean_residual,
    principal_curvatures,
    project_model,
    quadric_residual,
    surface_point,
)
from hdelaunay.hfunc import parse_h
from hdelaunay.orbit import IntegratorConfig, integrate, seed_pole, z_quadrature
from hdelaunay.phaseplane import PlaneSpec


class TestKTrig:
    def test_coth(self):
        assert abs(ktrig("cot", -1, 1.0) - 1.3130352855) < 1e-9

    def test_artanh(self):
        assert abs(ktrig("arctan", -1, 0.5) - 0.5493061443) < 1e-9

    def test_sin_spherical(self):
        assert abs(ktrig("sin", 1, math.pi / 2) - 1.0) < 1e-15

    def test_artanh_domain_is_asymptote(self):
        with pytest.raises(TrigDomainError):
            ktrig("arctan", -1, 1.0)

    def test_cot_zero(self):
        with pytest.raises(TrigDomainError):
            ktrig("cot", -1, 0.0)

    def test_kappa_validation(self):
        with pytest.raises(ValueError):
            ktrig("sin", 0, 1.0)


class TestEmbedding:
    def test_axis_point(self):
        p = embed_profile(0.0, 5.0, 1)
        assert p == (0.0, 0.0, 1.0, 5.0)

    def test_antipodal_axis(self):
        p = embed_profile(math.pi, 0.0, 1)
        assert abs(p.x1) < 1e-15 and abs(p.x3 + 1.0) < 1e-15

    def test_hyperbolic_point(self):
        p = embed_profile(1.0, 0.0, -1)
        assert abs(p.x1 - math.sinh(1.0)) < 1e-15
        assert abs(p.x3 - math.cosh(1.0)) < 1e-15

    def test_theta_zero_reduces_to_profile(self):
        assert surface_point(0.7, 2.0, 0.0, -1) == embed_profile(0.7, 2.0, -1)

    def test_half_turn(self):
        p = surface_point(1.0, 2.0, math.pi, -1)
        assert abs(p.x1 + math.sinh(1.0)) < 1e-12
        assert abs(p.x2) < 1e-12

    def test_quadric_residual_random(self):
        rng = np.random.RandomState(3)
        for _ in range(1000):
            kappa = int(rng.choice([-1, 1]))
            x = float(rng.uniform(0, math.pi if kappa == 1 else 4.0))
            z = float(rng.uniform(-5, 5))
            theta = float(rng.uniform(0, 2 * math.pi))
            p = surface_point(x, z, theta, kappa)
            assert quadric_residual(p, kappa) <= 1e-12

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            embed_profile(-0.1, 0.0, -1)
        with pytest.raises(ValueError):
            embed_profile(3.5, 0.0, 1)


class TestPrincipalCurvatures:
    def test_cylinder_point(self):
        # equilibrium of the hyperbolic plane for H=1 is the CMC-1 cylinder
        p = ProfileSample(s=0.0, x=math.atanh(0.5), y=0.0, z=0.0, eps=1)
        k1, k2 = principal_curvatures(p, 0.0, -1)
        assert k1 == 0.0
        assert abs(k2 - 2.0) < 1e-12

    def test_sphere_equator(self):
        # CMC-1 sphere over the hyperbolic base has equator at ln 3 and
        # mean curvature 1 there
        x0 = math.log(3.0)
        yp = (1.0) * (math.cosh(x0) / math.sinh(x0)) - 2.0
        p = ProfileSample(s=0.0, x=x0, y=0.0, z=0.0, eps=1)
        k1, k2 = principal_curvatures(p, yp, -1)
        assert abs(k1 + k2 - 2.0) < 1e-12

    def test_sign_relation(self):
        rng = np.random.RandomState(11)
        for _ in range(50):
            y = float(rng.uniform(-0.9, 0.9))
            yp = float(rng.uniform(-2, -1e-3))
            p = ProfileSample(s=0.0, x=1.0, y=y, z=0.0, eps=1)
            k1, _ = principal_curvatures(p, yp, -1)
            assert k1 > 0.0  # eps=1, y' < 0 forces positive geodesic curvature

    def test_degenerate_angle_rejected(self):
        p = ProfileSample(s=0.0, x=1.0, y=1.0, z=0.0, eps=1)
        with pytest.raises(ValueError):
            principal_curvatures(p, 0.0, -1)


class TestMeanResidual:
    def test_cylinder_exact(self):
        f = parse_h("1")
        samples = [
            ProfileSample(s, math.atanh(0.5), 0.0, s, eps=1, yp=0.0)
            for s in np.linspace(0, 2, 21)
        ]
        assert mean_residual(samples, f, -1) <= 1e-12

    def test_integrated_sphere(self):
        f = parse_h("1")
        spec = PlaneSpec(-1, 1, f)
        cfg = IntegratorConfig()
        orb = integrate(spec, seed_pole(spec, 1, cfg.seed_offset), cfg)
        z = z_quadrature(orb)
        samples = [
            ProfileSample(float(s), float(x), float(y), float(zz), 1, float(yp))
            for s, x, y, zz, yp in zip(orb.s, orb.x, orb.y, z, orb.yp)
        ]
        assert mean_residual(samples, f, -1) <= 1e-8

    def test_corruption_detected(self):
        f = parse_h("1")
        spec = PlaneSpec(-1, 1, f)
        cfg = IntegratorConfig()
        orb = integrate(spec, seed_pole(spec, 1, cfg.seed_offset), cfg)
        z = z_quadrature(orb)
        samples = [
            ProfileSample(float(s), float(x), float(y), float(zz), 1, float(yp))
            for s, x, y, zz, yp in zip(orb.s, orb.x, orb.y, z, orb.yp)
        ]
        # perturb a generic sample (sensitivity vanishes at the equator)
        idx = int(np.argmin(np.abs(orb.y - 0.5)))
        samples[idx].y += 1e-3
        assert mean_residual(samples, f, -1) >= 1e-4


class TestProjections:
    def test_axis_maps_to_origin(self):
        for kappa in (-1, 1):
            model = "poincare_disk" if kappa == -1 else "stereographic"
            u, v, z = project_model(embed_profile(0.0, 3.0, kappa), model, kappa)
            assert (u, v, z) == (0.0, 0.0, 3.0)

    def test_half_angle_identity(self):
        u, v, _ = project_model(embed_profile(1.0, 0.0, -1), "poincare_disk", -1)
        assert abs(u - math.tanh(0.5)) < 1e-12
        assert v == 0.0

    def test_projection_pole(self):
        with pytest.raises(ProjectionPoleError):
            project_model(embed_profile(math.pi, 0.0, 1), "stereographic", 1)

    def test_model_kappa_mismatch(self):
        with pytest.raises(ValueError):
            project_model(embed_profile(1.0, 0.0, -1), "stereographic", -1)

    def test_disk_images_inside_unit_disk(self):
        rng = np.random.RandomState(5)
        for _ in range(300):
            x = float(rng.uniform(0, 6.0))
            theta = float(rng.uniform(0, 2 * math.pi))
            u, v, _ = project_model(
                surface_point(x, 0.0, theta, -1), "poincare_disk", -1
            )
            assert u * u + v * v < 1.0


class TestArcLengthInvariant:
    def test_reconstructed_speed_is_unit(self):
        # x' estimated by 4th-order finite differences; z' = eps sqrt(1-y^2)
        f = parse_h("1+y^2")
        spec = PlaneSpec(-1, 1, f)
        cfg = IntegratorConfig()
        orb = integrate(spec, seed_pole(spec, 1, cfg.seed_offset), cfg)
        keep = (orb.x > 1e-3) & (1.0 - orb.y**2 > 1e-8)
        xp = finite_difference_derivative(orb.s, orb.x)
        speed2 = xp**2 + (1.0 - orb.y**2)
        assert np.max(np.abs(speed2[keep] - 1.0)) <= 1e-8
