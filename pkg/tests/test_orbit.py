import math

import numpy as np
import pytest

from conftest import ADMISSIBLE_H2R, ADMISSIBLE_S2R, polyline_intersections
from hdelaunay.hfunc import parse_h
from hdelaunay.orbit import (
    EventKind,
    IntegratorConfig,
    SeedError,
    State,
    detect_closed,
    first_integral_cmc,
    integrate,
    seed_pole,
    seed_turning,
    turning_radius,
    z_quadrature,
)
from hdelaunay.phaseplane import PlaneSpec, equilibria, gamma_x, vector_field

CFG = IntegratorConfig()


def canonical_spec(src, kappa):
    f = parse_h(src)
    eps = 1 if f.h(1.0) > 0 else -1
    return PlaneSpec(kappa, eps, f)


class TestSeeds:
    def test_pole_seed_values(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        st = seed_pole(spec, 1, 1e-3)
        assert st.x == 1e-3
        assert abs(st.y - (1.0 - 5e-7)) < 1e-15

    def test_pole_seed_sign_rule(self):
        spec = PlaneSpec(-1, 1, parse_h("-1"))
        with pytest.raises(SeedError):
            seed_pole(spec, 1, 1e-3)

    def test_pole_seed_vanishing_h(self):
        spec = PlaneSpec(1, 1, parse_h("1-y^2"))
        with pytest.raises(SeedError):
            seed_pole(spec, 1, 1e-3)

    def test_turning_seed_values(self):
        spec = PlaneSpec(-1, -1, parse_h("1"))
        st = seed_turning(spec, 0.7415, -1, 1e-3)
        assert abs(st.x - 0.7405) < 1e-15
        assert abs(st.y - (-1.0 + 2e-6)) < 1e-12

    def test_turning_seed_quadratic_coefficient(self):
        spec = PlaneSpec(-1, 1, parse_h("1+y^2"))
        st = seed_turning(spec, 0.8, 1, 1e-3)
        # H(1) = 2: y = 1 - 2*4*s0^2
        assert abs(st.y - (1.0 - 8e-6)) < 1e-12

    def test_turning_seed_wrong_plane(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        with pytest.raises(SeedError):
            seed_turning(spec, 0.7, -1, 1e-3)

    def test_seed_refinement_order(self):
        # halving the seed offset moves the meridian crossing at order >= 1.9
        spec = canonical_spec("1+y^2", -1)
        xs = []
        for s0 in (4e-3, 2e-3, 1e-3):
            orb = integrate(spec, seed_pole(spec, 1, s0), CFG)
            xs.append(orb.crossings[0].state.x)
        order = math.log2(abs(xs[0] - xs[1]) / abs(xs[1] - xs[2]))
        assert order >= 1.9


class TestIntegrate:
    def test_cmc_sphere_meridian_hyperbolic(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        orb = integrate(spec, seed_pole(spec, 1, CFG.seed_offset), CFG)
        assert abs(orb.crossings[0].state.x - math.log(3.0)) <= 1e-7

    def test_cmc_sphere_meridian_spherical(self):
        spec = PlaneSpec(1, 1, parse_h("1"))
        orb = integrate(spec, seed_pole(spec, 1, CFG.seed_offset), CFG)
        assert abs(orb.crossings[0].state.x - 2.0 * math.atan(0.5)) <= 1e-7

    def test_start_at_equilibrium(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        e0 = equilibria(spec)[0].x0
        orb = integrate(spec, State(0.0, e0, 0.0), CFG)
        assert orb.terminal.kind is EventKind.EQUILIBRIUM_APPROACH
        assert len(orb.s) == 1

    def test_budget_event(self):
        spec = PlaneSpec(-1, 1, parse_h("0.4"))
        cfg = IntegratorConfig(s_budget=5.0)
        orb = integrate(spec, seed_pole(spec, 1, cfg.seed_offset), cfg)
        assert orb.terminal.kind is EventKind.ARC_LENGTH_BUDGET
        assert abs(orb.length - 5.0) < 1e-9

    def test_turning_event_location(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        orb = integrate(spec, State(0.0, 1.5, 0.0), CFG)
        assert orb.terminal.kind is EventKind.TURNING
        level = math.sinh(1.5) - 2.0 * (math.cosh(1.5) - 1.0)
        x1_true = math.acosh(1.0 - level / 2.0)
        assert abs(turning_radius(spec, orb) - x1_true) <= 1e-6

    def test_antipodal_event(self):
        # the mirrored separatrix connects the antipodal corners (pi, +-1)
        f = parse_h("1")
        spec = PlaneSpec(1, -1, f)
        s0 = CFG.seed_offset
        start = State(s0, math.pi - s0, 1.0 - 0.5 * s0 * s0)
        orb = integrate(spec, start, CFG)
        assert orb.terminal.kind is EventKind.ANTIPODAL_POLE
        assert math.pi - orb.terminal.state.x <= 1e-6
        assert abs(orb.crossings[0].state.x - (math.pi - 2.0 * math.atan(0.5))) <= 1e-6

    def test_conservation_constant_h(self):
        for kappa, src in ((-1, "1"), (1, "1"), (-1, "-1")):
            spec = canonical_spec(src, kappa)
            h0 = spec.f.h(0.0) * spec.eps  # conserved form uses eps*H
            orb = integrate(spec, seed_pole(spec, 1, CFG.seed_offset), CFG)
            fi = np.array(
                [first_integral_cmc(kappa, h0, x, y) for x, y in zip(orb.x, orb.y)]
            )
            drift = np.max(np.abs(fi - fi[0]))
            assert drift / orb.length <= 1e-7

    def test_samples_strictly_increasing(self):
        spec = PlaneSpec(-1, 1, parse_h("1+y^2"))
        orb = integrate(spec, seed_pole(spec, 1, CFG.seed_offset), CFG)
        assert np.all(np.diff(orb.s) > 0)

    def test_ode_residual_at_midpoints(self):
        # dense-output derivative vs field at accepted-step midpoints, on
        # the regular part of the strip
        for src, kappa in (("1", -1), ("1+y^2", -1), ("1+y^2", 1), ("2*cos(y)", -1)):
            spec = canonical_spec(src, kappa)
            orb = integrate(spec, seed_pole(spec, 1, CFG.seed_offset), CFG)
            s, x, y, yp = orb.s, orb.x, orb.y, orb.yp
            checked = 0
            for i in range(len(s) - 1):
                h = s[i + 1] - s[i]
                if h <= 0:
                    continue
                xm = 0.5 * (x[i] + x[i + 1]) + 0.125 * h * (y[i] - y[i + 1])
                ym = 0.5 * (y[i] + y[i + 1]) + 0.125 * h * (yp[i] - yp[i + 1])
                if xm < 0.05 or (kappa == 1 and xm > math.pi - 0.05) or abs(ym) > 0.999:
                    continue
                dxm = 1.5 * (x[i + 1] - x[i]) / h - 0.25 * (y[i] + y[i + 1])
                dym = 1.5 * (y[i + 1] - y[i]) / h - 0.25 * (yp[i] + yp[i + 1])
                fx, fy = vector_field(spec, xm, ym)
                bound = 10.0 * CFG.rtol * (1.0 + math.hypot(xm, ym))
                assert abs(dxm - fx) <= bound and abs(dym - fy) <= bound
                checked += 1
            assert checked > 100

    def test_even_h_orbit_symmetry(self):
        # orbit through (xi, 0) of an even H satisfies x(-s)=x(s), y(-s)=-y(s)
        for src, kappa, xi in (("1+y^2", -1, 0.6), ("2*cos(y)", 1, 0.9)):
            spec = canonical_spec(src, kappa)
            fwd = integrate(spec, State(0.0, xi, 0.0), CFG,
                            stop_kinds={EventKind.MERIDIAN_CROSS})
            bwd = integrate(spec, State(0.0, xi, 0.0), CFG,
                            stop_kinds={EventKind.MERIDIAN_CROSS}, direction=-1)
            smax = 0.95 * min(orb.length for orb in (fwd, bwd))
            ss = np.linspace(0.0, smax, 300)
            xf, yf = fwd.sample_at(ss)
            xb, yb = bwd.sample_at(-ss)
            assert np.max(np.abs(xf - xb)) <= 1e-8
            assert np.max(np.abs(yf + yb)) <= 1e-8

    def test_monotonicity_compliance(self):
        # sign of the sampled increments matches the region prediction
        from hdelaunay.phaseplane import OnBoundaryError, monotonicity

        spec = PlaneSpec(-1, 1, parse_h("1+y^2"))
        orb = integrate(spec, State(0.0, 1.2, 0.0), CFG)
        s, x, y = orb.s, orb.x, orb.y
        for i in range(1, len(s) - 2):
            if abs(y[i]) < 1e-6 or 1.0 - y[i] ** 2 < 1e-6:
                continue
            try:
                tag = monotonicity(spec, float(x[i]), float(y[i]))
            except OnBoundaryError:
                continue
            if abs(y[i + 1] - y[i]) > 1e-13:
                assert math.copysign(1, y[i + 1] - y[i]) == tag.sign_y
            if abs(x[i + 1] - x[i]) > 1e-13:
                assert math.copysign(1, x[i + 1] - x[i]) == tag.sign_x

    def test_no_forbidden_axis_on_admissible_corpus(self):
        for kappa, corpus in ((-1, ADMISSIBLE_H2R), (1, ADMISSIBLE_S2R)):
            for src in corpus:
                spec = canonical_spec(src, kappa)
                orb = integrate(spec, seed_pole(spec, 1, CFG.seed_offset), CFG)
                assert orb.terminal.kind is not EventKind.FORBIDDEN_AXIS

    def test_orbits_do_not_cross(self):
        spec = PlaneSpec(-1, 1, parse_h("1+y^2"))
        fan = []
        for xi in (0.45, 0.6, 0.9, 1.1):
            orb = integrate(spec, State(0.0, xi, 0.0), CFG,
                            stop_kinds={EventKind.MERIDIAN_CROSS}, stop_count=2)
            fan.append((orb.x[::5], orb.y[::5]))
        for i in range(len(fan)):
            for j in range(i + 1, len(fan)):
                assert polyline_intersections(*fan[i], *fan[j]) == 0


class TestHeightQuadrature:
    def test_vertical_rate_one_at_equator_line(self):
        # an orbit pinned to y ~ 0 rises at unit rate; emulate with the
        # tiny-amplitude closed orbit around the equilibrium
        spec = PlaneSpec(-1, 1, parse_h("1"))
        e0 = equilibria(spec)[0].x0
        res = detect_closed(spec, e0 + 1e-8)
        assert res.closed
        assert abs(res.pitch - res.period) <= 1e-7  # z' = sqrt(1-y^2) ~ 1

    def test_sphere_height_symmetry(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        orb = integrate(spec, seed_pole(spec, 1, CFG.seed_offset), CFG)
        z_quadrature(orb)
        z_eq = orb.z_at(orb.crossings[0].state.s)[0]
        assert abs((orb.z[-1] - orb.z[0]) - 2.0 * z_eq) <= 1e-7

    def test_descending_branch(self):
        f = parse_h("1")
        spec = PlaneSpec(-1, -1, f)
        x1, _ = 0.7415364924, None
        orb = integrate(spec, seed_turning(spec, x1, -1, CFG.seed_offset), CFG)
        z = z_quadrature(orb)
        assert np.all(np.diff(z) <= 0.0)

    def test_turning_roundtrip(self):
        f = parse_h("1")
        spec_out = PlaneSpec(-1, 1, f)
        probe = integrate(spec_out, State(0.0, 1.5, 0.0), CFG)
        x1 = turning_radius(spec_out, probe)
        spec_in = PlaneSpec(-1, -1, f)
        back = integrate(spec_in, seed_turning(spec_in, x1, -1, CFG.seed_offset), CFG)
        assert back.terminal.kind is EventKind.TURNING
        assert abs(turning_radius(spec_in, back) - x1) <= 1e-6


class TestDetectClosed:
    def test_near_equilibrium_periods(self):
        for kappa, omega in ((-1, math.sqrt(3.0)), (1, math.sqrt(5.0))):
            spec = PlaneSpec(kappa, 1, parse_h("1"))
            e0 = equilibria(spec)[0].x0
            t_lin = 2.0 * math.pi / omega
            r1 = detect_closed(spec, e0 + 1e-2)
            r2 = detect_closed(spec, e0 + 1e-3)
            assert r1.closed and r2.closed
            assert abs(r1.period - t_lin) / t_lin <= 1e-2
            assert abs(r2.period - t_lin) / t_lin <= 1e-3

    def test_outside_separatrix_not_closed(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        res = detect_closed(spec, 1.5)
        assert not res.closed
        assert res.orbit.terminal.kind is EventKind.TURNING

    def test_at_equilibrium_rejected(self):
        spec = PlaneSpec(-1, 1, parse_h("1"))
        with pytest.raises(ValueError):
            detect_closed(spec, equilibria(spec)[0].x0)

    def test_positive_pitch(self):
        spec = PlaneSpec(-1, 1, parse_h("1+y^2"))
        res = detect_closed(spec, 0.6)
        assert res.closed and res.pitch > 0.0


class TestFirstIntegral:
    def test_pole_normalization_hyperbolic(self):
        assert first_integral_cmc(-1, 1.0, 0.0, 1.0) == 0.0

    def test_equator_level_hyperbolic(self):
        assert abs(first_integral_cmc(-1, 1.0, math.log(3.0), 0.0)) < 1e-15

    def test_torus_level_spherical(self):
        xi = math.pi - math.atan(2.0)
        assert abs(first_integral_cmc(1, 1.0, xi, 0.0)) < 1e-15

    def test_pole_level_spherical(self):
        assert abs(first_integral_cmc(1, 1.0, 0.0, 1.0) - 2.0) < 1e-15
