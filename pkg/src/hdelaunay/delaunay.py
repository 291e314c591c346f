"""Necessary-condition checkers and construction of complete rotational
profiles: sphere, cylinder, unduloid, nodoid, torus, horizontal slice.

The classification of the orbit through (xi, 0) is decided against two
reference radii of the canonical branch (the one with eps*H(1) > 0): the
equilibrium e0 (cylinder) and the sphere's meridian crossing x0, which
separates the closed-orbit region from the turning-arc region.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .geomk import ProfileSample
from .hfunc import ClassReport, HFunction, class_membership
from .orbit import (
    DEFAULT_CONFIG,
    Event,
    EventKind,
    IntegratorConfig,
    Orbit,
    State,
    detect_closed,
    integrate,
    seed_pole,
    seed_turning,
    turning_radius,
)
from .phaseplane import PlaneSpec, equilibria, gamma_asymptotes

__all__ = [
    "SurfaceKind",
    "ClosednessVerdict",
    "SphereNecessaryVerdict",
    "ProfileArc",
    "SurfaceProfile",
    "SphereData",
    "UnduloidData",
    "NodoidData",
    "TorusData",
    "TorusSearch",
    "ClassificationReport",
    "InadmissibleFunctionError",
    "SphereObstructionError",
    "MinimalSliceError",
    "NoEquilibriumError",
    "GluingError",
    "BuildInconsistencyError",
    "check_closed_necessary",
    "check_sphere_necessary",
    "build_sphere",
    "build_cylinder",
    "classify_initial",
    "build_unduloid",
    "build_nodoid",
    "find_torus_parameter",
    "build_torus",
    "canonical_eps",
]

log = logging.getLogger("hdelaunay.delaunay")

VERDICT_TOL = 1e-7       # |xi - e0| and |xi - x0| bands
TORUS_TOL = 1e-6         # |x1 - pi/2| band
GLUE_TOL = 1e-6          # turning-radius mismatch between consecutive arcs
JUNCTION_TOL = 1e-8      # (x, |y|, z) continuity at arc junctions
ENDPOINT_ZERO_TOL = 1e-12
ASYMPTOTE_NEAR = 0.05


class SurfaceKind(str, Enum):
    SPHERE = "Sphere"
    CYLINDER = "Cylinder"
    UNDULOID = "Unduloid"
    NODOID = "Nodoid"
    TORUS = "Torus"
    MINIMAL_SLICE = "MinimalSlice"


class InadmissibleFunctionError(ValueError):
    """H is outside the admissible class for the requested curvature sign."""

    def __init__(self, report: ClassReport, message: str | None = None):
        self.report = report
        super().__init__(message or _inadmissible_text(report))


class SphereObstructionError(RuntimeError):
    """The axis orbit failed to close onto the far pole."""

    def __init__(self, diagnostic: str, orbit: Orbit | None = None):
        self.diagnostic = diagnostic
        self.orbit = orbit
        super().__init__(diagnostic)


class MinimalSliceError(ValueError):
    """kappa=+1 with H(+-1)=0: the closed surface is a horizontal slice."""


class NoEquilibriumError(ValueError):
    """No vertical cylinder exists on the requested branch."""


class GluingError(RuntimeError):
    """Turning radii of consecutive arcs disagree beyond tolerance."""


class BuildInconsistencyError(RuntimeError):
    """A build step contradicted the classification verdict."""


def _inadmissible_text(report: ClassReport) -> str:
    reasons = []
    if not report.is_even:
        reasons.append("H is not even")
    if report.requested_kappa == -1 and not report.satisfies_h2r_inequality:
        reasons.append(
            f"2|H(y)| > sqrt(1-y^2) fails at y={report.inequality_witness:.6g} "
            f"(margin {report.inequality_margin:.6g})"
        )
    return "; ".join(reasons) or "not admissible"


@dataclass(frozen=True)
class ClosednessVerdict:
    """Endpoint-sign condition for any closed example to exist."""

    status: str  # "pass" | "fail" | "slice"
    h_minus: float
    h_plus: float

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "slice")


@dataclass(frozen=True)
class SphereNecessaryVerdict:
    passed: bool
    kappa: int
    # kappa = -1 payload
    inequality_witness: float | None = None
    inequality_margin: float | None = None
    # kappa = +1 payload
    zero_multiplicity_sum: int | None = None


@dataclass
class ProfileArc:
    """One branch-constant piece of a profile, with absolute heights."""

    eps: int
    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    yp: np.ndarray
    z: np.ndarray

    def to_samples(self) -> list[ProfileSample]:
        return [
            ProfileSample(float(si), float(xi), float(yi), float(zi), self.eps, float(ypi))
            for si, xi, yi, zi, ypi in zip(self.s, self.x, self.y, self.z, self.yp)
        ]

    @property
    def start(self) -> tuple[float, float, float]:
        return float(self.x[0]), float(self.y[0]), float(self.z[0])

    @property
    def end(self) -> tuple[float, float, float]:
        return float(self.x[-1]), float(self.y[-1]), float(self.z[-1])


@dataclass
class SurfaceProfile:
    """Ordered arcs glued with continuity; one complete rotational surface."""

    arcs: list[ProfileArc]
    closure: str  # "open" | "closed"

    def junction_defects(self) -> list[float]:
        out = []
        pairs = list(zip(self.arcs, self.arcs[1:]))
        if self.closure == "closed" and len(self.arcs) > 1:
            pairs.append((self.arcs[-1], self.arcs[0]))
        for a, b in pairs:
            xe, ye, ze = a.end
            xs, ys, zs = b.start
            out.append(max(abs(xe - xs), abs(abs(ye) - abs(ys)), abs(ze - zs)))
        return out

    def samples(self) -> list[ProfileSample]:
        return [p for arc in self.arcs for p in arc.to_samples()]


@dataclass
class SphereData:
    x0: float
    profile: SurfaceProfile
    monotone_ok: bool
    closure_defect: float
    height: float
    equator_s: float


@dataclass
class UnduloidData:
    xi: float
    period: float
    pitch: float
    x_range: tuple[float, float]
    profile: SurfaceProfile
    period_deviation: float


@dataclass
class NodoidData:
    xi: float
    x1: float
    r: float
    h1: float
    h2: float
    translation: float
    profile: SurfaceProfile


@dataclass
class TorusData:
    xi: float
    x1: float
    r: float
    closure_defect: float
    profile: SurfaceProfile


@dataclass(frozen=True)
class TorusSearch:
    xi_star: float | None
    samples: tuple[tuple[float, float], ...]  # (xi, x1) sign table

    @property
    def converged(self) -> bool:
        return self.xi_star is not None


@dataclass
class ClassificationReport:
    """Verdict for the complete surface through one initial radius.

    kind is None when the raw terminal behaviour does not fit the
    taxonomy (e.g. orbits reaching the antipodal axis for non-constant H);
    diagnostics then carries the observed event.
    """

    kind: SurfaceKind | None
    scalars: dict[str, float] = field(default_factory=dict)
    condition_report: ClassReport | None = None
    diagnostics: str = ""


def canonical_eps(f: HFunction) -> int:
    """Branch sign of the plane containing the sphere orbit: eps*H(1) > 0."""
    h1 = f.h(1.0)
    if h1 == 0.0:
        raise ValueError("H(1) = 0 has no canonical branch")
    return 1 if h1 > 0 else -1


def check_closed_necessary(f: HFunction, kappa: int) -> ClosednessVerdict:
    """Endpoint condition for a closed example: H(-1) H(1) > 0, with the
    horizontal-slice exception (product zero) on the spherical base."""
    hm, hp = f.h(-1.0), f.h(1.0)
    prod = hm * hp
    if prod > 0.0:
        return ClosednessVerdict("pass", hm, hp)
    if kappa == 1 and abs(prod) <= ENDPOINT_ZERO_TOL:
        return ClosednessVerdict("slice", hm, hp)
    return ClosednessVerdict("fail", hm, hp)


def check_sphere_necessary(f: HFunction, kappa: int) -> SphereNecessaryVerdict:
    """Necessary condition for a rotational sphere.

    Hyperbolic base: the strict inequality 2|H(y)| > sqrt(1-y^2) with its
    minimizing witness. Spherical base: the total multiplicity of the
    zeros of H must be even; an unresolved multiplicity propagates as an
    error rather than a guess.
    """
    report = class_membership(f, kappa)
    if kappa == -1:
        return SphereNecessaryVerdict(
            passed=report.satisfies_h2r_inequality,
            kappa=kappa,
            inequality_witness=report.inequality_witness,
            inequality_margin=report.inequality_margin,
        )
    zsum = report.zero_multiplicity_sum
    if zsum is None:
        raise RuntimeError("zero multiplicities unresolved; parity cannot be decided")
    return SphereNecessaryVerdict(passed=zsum % 2 == 0, kappa=kappa, zero_multiplicity_sum=zsum)


def _obstruction_text(spec: PlaneSpec, orbit: Orbit) -> str:
    st = orbit.terminal.state
    parts = [
        f"sphere orbit did not reach the far pole: terminal {orbit.terminal.kind.value} "
        f"at s={st.s:.6g}, x={st.x:.6g}, y={st.y:.6g}"
    ]
    if spec.kappa == -1:
        asym = gamma_asymptotes(spec)
        if asym:
            near = min(asym, key=lambda a: abs(a - st.y))
            txt = "asymptote obstruction" if abs(st.y - near) < ASYMPTOTE_NEAR else "asymptotes present"
            parts.append(
                f"nullcline asymptote(s) at y in {[round(a, 9) for a in asym]}; "
                f"final y is {abs(st.y - near):.3g} from y0={near:.6g} ({txt})"
            )
    eqs = equilibria(spec)
    if eqs:
        d = min(math.hypot(st.x - e.x0, st.y) for e in eqs)
        if d < 1e-2 or orbit.terminal.kind is EventKind.EQUILIBRIUM_APPROACH:
            parts.append(f"equilibrium obstruction: final state {d:.3g} from e0")
    return "; ".join(parts)


def _completed_arc(
    orbit: Orbit,
    spec: PlaneSpec,
    z0: float,
    start_point: tuple[float, float] | None,
    end_kind: str,
    end_x: float | None = None,
) -> ProfileArc:
    """Arc arrays extended to exact boundary endpoints.

    start_point: exact (x, y) the seeded orbit emanates from (pole corner
    or turning circle), prepended at its true arc-length origin s=0.
    end_kind: 'pole' appends the exact corner (0, sign(y)); 'turn' appends
    the tangency, pinned at end_x when the junction is shared with another
    arc (the independent radius fit is checked separately); 'none' leaves
    the terminal sample as is.
    """
    s = list(orbit.s)
    x = list(orbit.x)
    y = list(orbit.y)
    yp = list(orbit.yp)
    if start_point is not None:
        s.insert(0, 0.0)
        x.insert(0, start_point[0])
        y.insert(0, start_point[1])
        yp.insert(0, 0.0)
    if end_kind == "pole":
        ds = x[-1]  # x' = y ~ +-1 down the corner
        s.append(s[-1] + ds)
        x.append(0.0)
        y.append(1.0 if y[-1] > 0 else -1.0)
        yp.append(0.0)
    elif end_kind == "turn":
        delta = 1 if y[-1] > 0 else -1
        hd = spec.f.h(float(delta))
        x1 = end_x if end_x is not None else turning_radius(spec, orbit)
        ds = math.sqrt(0.5 * max(0.0, 1.0 - abs(y[-1]))) / abs(hd) if hd else 0.0
        s.append(s[-1] + ds)
        x.append(x1)
        y.append(float(delta))
        yp.append(0.0)
    sa = np.array(s)
    ya = np.array(y)
    ypa = np.array(yp)
    za = _cumulative_height(sa, ya, ypa, spec.eps, z0)
    return ProfileArc(spec.eps, sa, np.array(x), ya, ypa, za)


def _cumulative_height(s, y, yp, eps, z0) -> np.ndarray:
    z = np.empty(len(s))
    z[0] = z0

    def g(yv):
        return eps * math.sqrt(max(0.0, 1.0 - yv * yv))

    for i in range(len(s) - 1):
        h = s[i + 1] - s[i]
        ym = 0.5 * (y[i] + y[i + 1]) + 0.125 * h * (yp[i] - yp[i + 1])
        z[i + 1] = z[i] + (h / 6.0) * (g(y[i]) + 4.0 * g(ym) + g(y[i + 1]))
    return z


def build_sphere(f: HFunction, kappa: int, cfg: IntegratorConfig | None = None) -> SphereData:
    """Shoot the axis orbit from (0, +1) and require it to close at (0, -1).

    Performs no admissibility pre-check: for functions violating the
    necessary conditions the obstruction (asymptote convergence, turning,
    equilibrium approach) is reported via SphereObstructionError, which is
    exactly how the non-existence manifests numerically.
    """
    cfg = cfg or DEFAULT_CONFIG
    h1 = f.h(1.0)
    if kappa == 1 and abs(h1) <= ENDPOINT_ZERO_TOL:
        raise MinimalSliceError(
            "H(+-1) = 0 on the spherical base: the closed example is a horizontal "
            "slice, not an integrated sphere"
        )
    if h1 == 0.0:
        raise SphereObstructionError("H(1) = 0: no orbit meets the axis")
    eps = canonical_eps(f)
    spec = PlaneSpec(kappa, eps, f)
    orbit = integrate(spec, seed_pole(spec, 1, cfg.seed_offset), cfg)
    if orbit.terminal.kind is not EventKind.POLE_REACHED:
        raise SphereObstructionError(_obstruction_text(spec, orbit), orbit)
    if not orbit.crossings:
        raise SphereObstructionError("pole reached without a meridian crossing", orbit)
    x0 = float(orbit.crossings[0].state.x)
    # strict monotonicity is certified outside the axis corners, where the
    # angle error of the integrator exceeds the vanishing true slope
    interior = (1.0 - orbit.y**2 > 1e-10) & (orbit.x > 10.0 * cfg.pole_capture)
    monotone_ok = bool(np.all(orbit.yp[interior] < 0.0))
    arc = _completed_arc(orbit, spec, 0.0, (0.0, 1.0), "pole")
    profile = SurfaceProfile([arc], closure="closed")
    log.info("sphere: x0=%.9g, defect=%.3g, monotone=%s", x0, orbit.terminal.state.x, monotone_ok)
    return SphereData(
        x0=x0,
        profile=profile,
        monotone_ok=monotone_ok,
        closure_defect=float(orbit.terminal.state.x),
        height=float(arc.z[-1] - arc.z[0]),
        equator_s=float(orbit.crossings[0].state.s),
    )


def build_cylinder(f: HFunction, kappa: int, eps: int) -> ClassificationReport:
    """The vertical cylinder at the equilibrium radius of one branch."""
    spec = PlaneSpec(kappa, eps, f)
    eqs = equilibria(spec)
    if not eqs:
        raise NoEquilibriumError(
            f"no equilibrium on the eps={eps} branch (requires 2*eps*H(0) > 1 "
            f"on the hyperbolic base); H(0)={f.h(0.0):.6g}"
        )
    e0 = eqs[0].x0
    return ClassificationReport(
        kind=SurfaceKind.CYLINDER,
        scalars={"e0": e0, "mean_curvature": eps * f.h(0.0)},
        condition_report=class_membership(f, kappa),
        diagnostics=f"vertical cylinder of constant mean curvature {eps * f.h(0.0):.12g}",
    )


def classify_initial(
    f: HFunction, kappa: int, xi: float, cfg: IntegratorConfig | None = None
) -> ClassificationReport:
    """Classify the complete rotational surface through (xi, 0).

    Order of verdicts: cylinder band around e0, sphere band around x0,
    closed-orbit region xi < x0 (unduloid, confirmed by the return map),
    turning region xi > x0 (torus exactly when the turning radius is
    pi/2 on the spherical base, else nodoid).
    """
    cfg = cfg or DEFAULT_CONFIG
    report = class_membership(f, kappa)
    if not report.admissible:
        raise InadmissibleFunctionError(report)
    if kappa == 1 and abs(f.h(1.0)) <= ENDPOINT_ZERO_TOL:
        return ClassificationReport(
            kind=SurfaceKind.MINIMAL_SLICE,
            scalars={},
            condition_report=report,
            diagnostics="H(+-1)=0: horizontal slice, totally geodesic; not integrated",
        )
    sphere = build_sphere(f, kappa, cfg)
    eps = canonical_eps(f)
    spec = PlaneSpec(kappa, eps, f)
    e0 = equilibria(spec)[0].x0
    if not (0.0 < xi < spec.x_max):
        raise ValueError(f"xi={xi!r} outside the open strip")

    scalars = {"e0": e0, "x0": sphere.x0, "xi": xi}
    if abs(xi - e0) <= VERDICT_TOL:
        return ClassificationReport(
            kind=SurfaceKind.CYLINDER,
            scalars={"e0": e0, "mean_curvature": eps * f.h(0.0)},
            condition_report=report,
            diagnostics="initial radius at the equilibrium",
        )
    if abs(xi - sphere.x0) <= VERDICT_TOL:
        return ClassificationReport(
            kind=SurfaceKind.SPHERE,
            scalars={"e0": e0, "x0": sphere.x0},
            condition_report=report,
            diagnostics="initial radius on the sphere separatrix",
        )
    if xi < sphere.x0:
        res = detect_closed(spec, xi, cfg)
        if not res.closed:
            return ClassificationReport(
                kind=None,
                scalars=scalars,
                condition_report=report,
                diagnostics=(
                    "inside the separatrix but the return map did not close: "
                    f"terminal {res.orbit.terminal.kind.value}"
                ),
            )
        scalars.update(period=res.period, pitch=res.pitch)
        return ClassificationReport(
            kind=SurfaceKind.UNDULOID,
            scalars=scalars,
            condition_report=report,
            diagnostics="closed orbit around the equilibrium",
        )
    probe = integrate(spec, State(0.0, xi, 0.0), cfg)
    if probe.terminal.kind is not EventKind.TURNING:
        return ClassificationReport(
            kind=None,
            scalars=scalars,
            condition_report=report,
            diagnostics=(
                f"outside the separatrix with terminal {probe.terminal.kind.value} at "
                f"x={probe.terminal.state.x:.6g}, y={probe.terminal.state.y:.6g}; "
                "no taxonomy label is asserted for this behaviour"
            ),
        )
    x1 = turning_radius(spec, probe)
    scalars["x1"] = x1
    if kappa == 1 and abs(x1 - 0.5 * math.pi) <= TORUS_TOL:
        return ClassificationReport(
            kind=SurfaceKind.TORUS,
            scalars=scalars,
            condition_report=report,
            diagnostics="turning circle on the mirror line x = pi/2",
        )
    return ClassificationReport(
        kind=SurfaceKind.NODOID,
        scalars=scalars,
        condition_report=report,
        diagnostics="turning arc outside the separatrix",
    )


def build_unduloid(
    f: HFunction, kappa: int, xi: float, n_periods: int = 1, cfg: IntegratorConfig | None = None
) -> UnduloidData:
    """n periods of the closed orbit through (xi, 0) with heights."""
    cfg = cfg or DEFAULT_CONFIG
    if n_periods < 1:
        raise ValueError("n_periods must be >= 1")
    eps = canonical_eps(f)
    spec = PlaneSpec(kappa, eps, f)
    res = detect_closed(spec, xi, cfg)
    if not res.closed:
        raise BuildInconsistencyError(
            f"orbit through ({xi:.6g}, 0) did not close "
            f"(terminal {res.orbit.terminal.kind.value}); not an unduloid"
        )
    orbit = integrate(
        spec,
        State(0.0, xi, 0.0),
        cfg,
        stop_kinds={EventKind.MERIDIAN_CROSS},
        stop_count=2 * n_periods,
    )
    if orbit.terminal.kind is not EventKind.MERIDIAN_CROSS:
        raise BuildInconsistencyError(
            f"period continuation interrupted by {orbit.terminal.kind.value}"
        )
    period = res.period
    smax = float(orbit.s[-1])
    ss = np.linspace(0.0, min(period, smax - period), 257)
    x_a, y_a = orbit.sample_at(ss)
    x_b, y_b = orbit.sample_at(ss + period)
    deviation = float(np.max(np.abs(x_a - x_b)))
    arc = _completed_arc(orbit, spec, 0.0, None, "none")
    return UnduloidData(
        xi=xi,
        period=period,
        pitch=res.pitch,
        x_range=(float(orbit.x.min()), float(orbit.x.max())),
        profile=SurfaceProfile([arc], closure="open"),
        period_deviation=deviation,
    )


def _nodoid_arcs(
    f: HFunction, kappa: int, x1: float, cfg: IntegratorConfig
) -> tuple[ProfileArc, ProfileArc, float, float, float, float]:
    """One outer (canonical eps) and one inner (opposite eps) arc glued at
    the turning circle x1; returns (outer, inner, r, h1, h2, fit_mismatch),
    the last being the worst disagreement of the independently fitted
    turning radii with the shared x1."""
    eps = canonical_eps(f)
    spec_out = PlaneSpec(kappa, eps, f)
    spec_in = PlaneSpec(kappa, -eps, f)

    orb_out = integrate(spec_out, seed_turning(spec_out, x1, 1, cfg.seed_offset), cfg)
    if orb_out.terminal.kind is not EventKind.TURNING:
        raise BuildInconsistencyError(
            f"outer arc terminal {orb_out.terminal.kind.value}, expected a turning circle"
        )
    x1_out = turning_radius(spec_out, orb_out)
    if abs(x1_out - x1) > GLUE_TOL:
        raise GluingError(f"outer arc returned to x={x1_out:.9g}, seeded from x1={x1:.9g}")

    orb_in = integrate(spec_in, seed_turning(spec_in, x1, -1, cfg.seed_offset), cfg)
    if orb_in.terminal.kind is not EventKind.TURNING:
        raise BuildInconsistencyError(
            f"inner arc terminal {orb_in.terminal.kind.value}, expected a turning circle"
        )
    x1_in = turning_radius(spec_in, orb_in)
    if abs(x1_in - x1) > GLUE_TOL:
        raise GluingError(f"inner arc returned to x={x1_in:.9g}, seeded from x1={x1:.9g}")
    if not orb_in.crossings:
        raise BuildInconsistencyError("inner arc has no meridian crossing")
    r = float(orb_in.crossings[0].state.x)

    outer = _completed_arc(orb_out, spec_out, 0.0, (x1, 1.0), "turn", end_x=x1)
    inner = _completed_arc(orb_in, spec_in, 0.0, (x1, -1.0), "turn", end_x=x1)
    h1 = abs(float(outer.z[-1] - outer.z[0]))
    h2 = abs(float(inner.z[-1] - inner.z[0]))
    mismatch = max(abs(x1_out - x1), abs(x1_in - x1))
    return outer, inner, r, h1, h2, mismatch


def _shift_arc(arc: ProfileArc, dz: float) -> ProfileArc:
    return ProfileArc(arc.eps, arc.s, arc.x, arc.y, arc.yp, arc.z + dz)


def build_nodoid(
    f: HFunction, kappa: int, xi: float, n_periods: int = 1, cfg: IntegratorConfig | None = None
) -> NodoidData:
    """Alternating outer/inner arcs glued at turning circles.

    The outer arc (canonical branch) runs from the turning circle through
    (xi, 0) back to it; the inner arc (opposite branch) comes back through
    (r, 0) with oppositely-signed height advance, producing the
    self-overlapping loops. The pattern repeats with vertical translation
    |h1 - h2| per period.
    """
    cfg = cfg or DEFAULT_CONFIG
    if n_periods < 1:
        raise ValueError("n_periods must be >= 1")
    eps = canonical_eps(f)
    spec = PlaneSpec(kappa, eps, f)
    probe = integrate(spec, State(0.0, xi, 0.0), cfg)
    if probe.terminal.kind is not EventKind.TURNING:
        raise BuildInconsistencyError(
            f"orbit through ({xi:.6g}, 0) has terminal "
            f"{probe.terminal.kind.value}; not a nodoid initial radius"
        )
    x1 = turning_radius(spec, probe)
    outer, inner, r, h1, h2, _ = _nodoid_arcs(f, kappa, x1, cfg)
    if not (r < x1 < xi):
        raise BuildInconsistencyError(f"radius ordering violated: r={r}, x1={x1}, xi={xi}")

    arcs = []
    z = 0.0
    sign_out = 1.0 if outer.z[-1] >= outer.z[0] else -1.0
    sign_in = 1.0 if inner.z[-1] >= inner.z[0] else -1.0
    for _ in range(n_periods):
        arcs.append(_shift_arc(outer, z))
        z += sign_out * h1
        arcs.append(_shift_arc(inner, z))
        z += sign_in * h2
    profile = SurfaceProfile(arcs, closure="open")
    return NodoidData(
        xi=xi, x1=x1, r=r, h1=h1, h2=h2, translation=abs(h1 - h2), profile=profile
    )


def find_torus_parameter(
    f: HFunction,
    cfg: IntegratorConfig | None = None,
    bracket: tuple[float, float] | None = None,
    n_scan: int = 25,
) -> TorusSearch:
    """Solve x1(xi) = pi/2 for the embedded torus initial radius.

    Scans xi over (x0 + tol, pi - tol) for a sign change of x1 - pi/2,
    then bisects to 1e-8. Initial radii whose orbit does not end at a
    turning circle are recorded in the sign table and skipped.
    """
    cfg = cfg or DEFAULT_CONFIG
    kappa = 1
    spec = PlaneSpec(kappa, canonical_eps(f), f)

    def probe(xi: float) -> float | None:
        orb = integrate(spec, State(0.0, xi, 0.0), cfg)
        if orb.terminal.kind is not EventKind.TURNING:
            return None
        return turning_radius(spec, orb)

    if bracket is None:
        x0 = build_sphere(f, kappa, cfg).x0
        bracket = (x0 + 1e-3, math.pi - 1e-3)
    lo, hi = bracket
    xs = np.linspace(lo, hi, n_scan)
    table: list[tuple[float, float]] = []
    vals: list[tuple[float, float]] = []
    for xi in xs:
        x1 = probe(float(xi))
        if x1 is None:
            table.append((float(xi), math.nan))
            continue
        table.append((float(xi), x1))
        vals.append((float(xi), x1))
    pair = None
    for (xa, va), (xb, vb) in zip(vals, vals[1:]):
        if (va - 0.5 * math.pi) * (vb - 0.5 * math.pi) <= 0.0:
            pair = (xa, va, xb, vb)
            break
    if pair is None:
        return TorusSearch(None, tuple(table))
    xa, va, xb, vb = pair
    ga = va - 0.5 * math.pi
    for _ in range(80):
        if xb - xa <= 1e-8:
            break
        xm = 0.5 * (xa + xb)
        vm = probe(xm)
        if vm is None:
            break
        gm = vm - 0.5 * math.pi
        if (ga < 0.0) != (gm < 0.0):
            xb = xm
        else:
            xa, ga = xm, gm
    return TorusSearch(0.5 * (xa + xb), tuple(table))


def build_torus(
    f: HFunction, cfg: IntegratorConfig | None = None, xi: float | None = None
) -> TorusData:
    """The embedded torus: one outer and one inner arc closing up exactly.

    xi defaults to the solved torus parameter; the closure defect is the
    (x, |y|, z) distance between the end of the inner arc and the start of
    the outer one.
    """
    cfg = cfg or DEFAULT_CONFIG
    if xi is None:
        search = find_torus_parameter(f, cfg)
        if not search.converged:
            raise BuildInconsistencyError(
                f"no torus parameter: x1(xi) - pi/2 has no sign change; table {search.samples}"
            )
        xi = search.xi_star
    spec = PlaneSpec(1, canonical_eps(f), f)
    probe = integrate(spec, State(0.0, xi, 0.0), cfg)
    if probe.terminal.kind is not EventKind.TURNING:
        raise BuildInconsistencyError(
            f"torus radius xi={xi:.9g} has terminal {probe.terminal.kind.value}"
        )
    x1 = turning_radius(spec, probe)
    outer, inner, r, h1, h2, mismatch = _nodoid_arcs(f, 1, x1, cfg)
    sign_out = 1.0 if outer.z[-1] >= outer.z[0] else -1.0
    arcs = [outer, _shift_arc(inner, sign_out * h1)]
    profile = SurfaceProfile(arcs, closure="closed")
    xe, ye, ze = arcs[1].end
    xs, ys, zs = arcs[0].start
    defect = max(abs(xe - xs), abs(abs(ye) - abs(ys)), abs(ze - zs), mismatch)
    return TorusData(xi=xi, x1=x1, r=r, closure_defect=float(defect), profile=profile)
