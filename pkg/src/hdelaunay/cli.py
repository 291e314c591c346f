"""Command-line front end: condition reports, phase portraits, profile
data and revolution meshes.

Exit codes: 0 success, 1 parse/usage error, 2 inadmissible prescribed
function, 3 classification mismatch, 4 numeric failure. The DELAUNAY_LOG
environment variable (error|info|debug) controls logging verbosity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys

import numpy as np

from . import delaunay as dl
from .geomk import project_model, surface_point
from .hfunc import (
    HParseError,
    ZeroResolutionError,
    class_membership,
    find_zeros,
    is_even,
    parse_h,
)
from .orbit import (
    EventKind,
    IntegratorConfig,
    SeedError,
    State,
    StepUnderflowError,
    integrate,
    seed_pole,
)
from .phaseplane import PlaneSpec, equilibria, gamma_asymptotes, gamma_curve

log = logging.getLogger("hdelaunay.cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INADMISSIBLE = 2
EXIT_MISMATCH = 3
EXIT_NUMERIC = 4

_NUMERIC_ERRORS = (
    dl.SphereObstructionError,
    dl.GluingError,
    dl.BuildInconsistencyError,
    dl.NoEquilibriumError,
    dl.MinimalSliceError,
    StepUnderflowError,
    SeedError,
    ZeroResolutionError,
)


class MismatchError(RuntimeError):
    """Requested build kind disagrees with the classification verdict."""


# ---------------------------------------------------------------------------
# report rendering


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if v is None:
        return "none"
    return str(v)


def render_report(data: dict, indent: int = 0) -> str:
    """key: value lines, nested mappings indented by two spaces."""
    out = []
    pad = "  " * indent
    for key, value in data.items():
        if isinstance(value, dict):
            out.append(f"{pad}{key}:")
            out.append(render_report(value, indent + 1))
        else:
            out.append(f"{pad}{key}: {_fmt_value(value)}")
    return "\n".join(out)


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _emit_report(data: dict, args) -> None:
    if getattr(args, "json", False):
        text = json.dumps(_jsonable(data), indent=2) + "\n"
    else:
        text = render_report(data) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# SVG assembly (no plotting dependency; byte-stable output)

_SVG_W, _SVG_H = 800, 520
_MARGIN = 50.0

_SVG_STYLE = (
    ".axis{stroke:#444444;stroke-width:1;fill:none}"
    ".tick{stroke:#444444;stroke-width:1}"
    ".ticklabel{font-family:monospace;font-size:11px;fill:#444444}"
    ".gamma{stroke:#2ca02c;stroke-width:1.8;fill:none}"
    ".orbit{stroke:#1f77b4;stroke-width:1.2;fill:none}"
    ".separatrix{stroke:#d62728;stroke-width:1.8;fill:none}"
    ".asymptote{stroke:#9467bd;stroke-width:1;stroke-dasharray:6 4;fill:none}"
    ".equilibrium{stroke:#000000;stroke-width:1;fill:#ff7f0e}"
)


class _SvgCanvas:
    def __init__(self, x_max: float):
        self.x_max = x_max
        self.parts: list[str] = []

    def _map(self, x: float, y: float) -> tuple[float, float]:
        px = _MARGIN + (x / self.x_max) * (_SVG_W - 2 * _MARGIN)
        py = _MARGIN + (1.0 - (y + 1.0) / 2.0) * (_SVG_H - 2 * _MARGIN)
        return px, py

    def polyline(self, xs, ys, cls: str) -> None:
        pts = []
        for x, y in zip(xs, ys):
            if not (math.isfinite(x) and math.isfinite(y)) or x > self.x_max:
                continue
            px, py = self._map(float(x), float(y))
            pts.append(f"{px:.3f},{py:.3f}")
        if len(pts) >= 2:
            self.parts.append(f'<polyline class="{cls}" points="{" ".join(pts)}"/>')

    def hline(self, y: float, cls: str) -> None:
        a = self._map(0.0, y)
        b = self._map(self.x_max, y)
        self.parts.append(
            f'<line class="{cls}" x1="{a[0]:.3f}" y1="{a[1]:.3f}" x2="{b[0]:.3f}" y2="{b[1]:.3f}"/>'
        )

    def circle(self, x: float, y: float, cls: str, r: float = 4.0) -> None:
        px, py = self._map(x, y)
        self.parts.append(f'<circle class="{cls}" cx="{px:.3f}" cy="{py:.3f}" r="{r}"/>')

    def axes(self) -> None:
        x0, y0 = self._map(0.0, -1.0)
        x1, y1 = self._map(self.x_max, 1.0)
        self.parts.append(
            f'<rect class="axis" x="{min(x0, x1):.3f}" y="{min(y0, y1):.3f}" '
            f'width="{abs(x1 - x0):.3f}" height="{abs(y1 - y0):.3f}"/>'
        )
        self.hline(0.0, "axis")
        step = 0.5 if self.x_max <= 4.0 else 1.0
        t = step
        while t < self.x_max * (1 + 1e-9):
            px, py = self._map(min(t, self.x_max), -1.0)
            self.parts.append(
                f'<line class="tick" x1="{px:.3f}" y1="{py:.3f}" x2="{px:.3f}" y2="{py + 5:.3f}"/>'
            )
            self.parts.append(
                f'<text class="ticklabel" x="{px - 8:.3f}" y="{py + 18:.3f}">{t:g}</text>'
            )
            t += step
        for yt in (-1.0, -0.5, 0.0, 0.5, 1.0):
            px, py = self._map(0.0, yt)
            self.parts.append(
                f'<line class="tick" x1="{px - 5:.3f}" y1="{py:.3f}" x2="{px:.3f}" y2="{py:.3f}"/>'
            )
            self.parts.append(
                f'<text class="ticklabel" x="{px - 34:.3f}" y="{py + 4:.3f}">{yt:g}</text>'
            )

    def document(self) -> str:
        body = "\n".join(self.parts)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_SVG_W}" height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">\n'
            f"<style>{_SVG_STYLE}</style>\n"
            f"{body}\n</svg>\n"
        )


# ---------------------------------------------------------------------------
# CSV / OBJ emission


def write_orbit_csv(path: str, orbits: list[tuple[int, np.ndarray, np.ndarray, np.ndarray]]):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["orbit_id", "s", "x", "y"])
        for oid, s, x, y in orbits:
            for si, xi, yi in zip(s, x, y):
                w.writerow([oid, repr(float(si)), repr(float(xi)), repr(float(yi))])


def write_profile_csv(path: str, profile: dl.SurfaceProfile) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["arc_id", "eps", "s", "x", "y", "z"])
        for aid, arc in enumerate(profile.arcs):
            for si, xi, yi, zi in zip(arc.s, arc.x, arc.y, arc.z):
                w.writerow([aid, arc.eps, repr(float(si)), repr(float(xi)), repr(float(yi)), repr(float(zi))])


def _resample_rows(profile: dl.SurfaceProfile, per_arc: int = 160) -> list[tuple[float, float]]:
    rows: list[tuple[float, float]] = []
    for arc in profile.arcs:
        n = len(arc.s)
        idx = np.unique(np.linspace(0, n - 1, min(n, per_arc)).round().astype(int))
        for i in idx:
            pt = (float(arc.x[i]), float(arc.z[i]))
            if rows and abs(rows[-1][0] - pt[0]) < 1e-12 and abs(rows[-1][1] - pt[1]) < 1e-12:
                continue
            rows.append(pt)
    # a run of consecutive axis-adjacent rows becomes a single pole row
    out: list[tuple[float, float]] = []
    for pt in rows:
        if out and out[-1][0] <= 1e-6 and pt[0] <= 1e-6:
            if pt[0] < out[-1][0]:
                out[-1] = pt
            continue
        out.append(pt)
    return out


def revolve_mesh(
    profile: dl.SurfaceProfile,
    kappa: int,
    model: str,
    n_theta: int,
) -> tuple[list[tuple[float, float, float]], list[tuple[int, int, int]]]:
    """Vertex/triangle mesh of the surface of revolution in the chart model.

    The theta seam is welded (vertices shared modulo n_theta). Rows whose
    axis distance is at the pole are collapsed to a single vertex with a
    triangle fan; a closed profile (torus) additionally welds the first
    and last rows.
    """
    rows = _resample_rows(profile)
    closed_loop = profile.closure == "closed" and len(profile.arcs) > 1
    if closed_loop and math.hypot(rows[0][0] - rows[-1][0], rows[0][1] - rows[-1][1]) < 1e-5:
        rows = rows[:-1]

    verts: list[tuple[float, float, float]] = []
    ring_index: list[int | None] = []  # base vertex index of each row's ring, None for poles
    pole_index: dict[int, int] = {}

    for i, (x, z) in enumerate(rows):
        if x <= 1e-6 and not closed_loop:
            p = project_model(surface_point(0.0, z, 0.0, kappa), model, kappa)
            pole_index[i] = len(verts)
            verts.append(p)
            ring_index.append(None)
            continue
        base = len(verts)
        for j in range(n_theta):
            theta = 2.0 * math.pi * j / n_theta
            p = project_model(surface_point(x, z, theta, kappa), model, kappa)
            verts.append(p)
        ring_index.append(base)

    faces: list[tuple[int, int, int]] = []
    n_rows = len(rows)
    row_pairs = [(i, i + 1) for i in range(n_rows - 1)]
    if closed_loop:
        row_pairs.append((n_rows - 1, 0))
    for ia, ib in row_pairs:
        ra, rb = ring_index[ia], ring_index[ib]
        if ra is None and rb is None:
            continue
        if ra is None:
            apex = pole_index[ia]
            for j in range(n_theta):
                jn = (j + 1) % n_theta
                faces.append((apex, rb + j, rb + jn))
            continue
        if rb is None:
            apex = pole_index[ib]
            for j in range(n_theta):
                jn = (j + 1) % n_theta
                faces.append((ra + j, apex, ra + jn))
            continue
        for j in range(n_theta):
            jn = (j + 1) % n_theta
            faces.append((ra + j, rb + j, rb + jn))
            faces.append((ra + j, rb + jn, ra + jn))
    return verts, faces


def write_obj(path: str, verts, faces) -> None:
    with open(path, "w") as fh:
        for v in verts:
            fh.write(f"v {v[0]:.9f} {v[1]:.9f} {v[2]:.9f}\n")
        for f3 in faces:
            fh.write(f"f {f3[0] + 1} {f3[1] + 1} {f3[2] + 1}\n")


# ---------------------------------------------------------------------------
# subcommands


def _integrator_config(args) -> IntegratorConfig:
    kw = {}
    if args.rtol is not None:
        kw["rtol"] = args.rtol
    if args.atol is not None:
        kw["atol"] = args.atol
    return IntegratorConfig(**kw)


def _check_payload(f, kappa: int) -> dict:
    report = class_membership(f, kappa)
    zeros: dict = {}
    try:
        recs = find_zeros(f)
        zeros["count"] = len(recs)
        zeros["multiplicity_sum"] = report.zero_multiplicity_sum
        for i, z in enumerate(recs):
            zeros[f"zero_{i}"] = {
                "y0": z.y0,
                "multiplicity": z.multiplicity if z.multiplicity is not None else "unresolved (>6)",
                "sign_change": z.sign_change,
            }
    except ZeroResolutionError as exc:
        zeros["error"] = str(exc)
    eq: dict = {}
    asym: dict = {}
    for eps in (1, -1):
        spec = PlaneSpec(kappa, eps, f)
        pts = equilibria(spec)
        eq[f"eps={eps:+d}"] = pts[0].x0 if pts else None
        if kappa == -1:
            asym[f"eps={eps:+d}"] = gamma_asymptotes(spec)
    data = {
        "expression": f.source,
        "kappa": kappa,
        "is_even": report.is_even,
        "h2r_inequality": {
            "satisfied": report.satisfies_h2r_inequality,
            "witness_y": report.inequality_witness,
            "margin": report.inequality_margin,
        },
        "zeros": zeros,
        "equilibria": eq,
    }
    if kappa == -1:
        data["gamma_asymptotes"] = asym
    data["admissible"] = {
        "kappa=-1": -1 in report.admissible_for,
        "kappa=+1": +1 in report.admissible_for,
    }
    data["verdict"] = "admissible" if report.admissible else "not admissible"
    return data


def cmd_check(args) -> int:
    f = parse_h(args.expression)
    data = _check_payload(f, args.kappa)
    _emit_report(data, args)
    return EXIT_OK if data["verdict"] == "admissible" else EXIT_INADMISSIBLE


def _portrait_orbits(f, kappa: int, eps: int, xis: list[float], cfg: IntegratorConfig):
    """(orbit_id, s, x, y) polylines: a separatrix when the axis orbit
    exists on this branch, plus a fan through (xi, 0)."""
    spec = PlaneSpec(kappa, eps, f)
    fan_cfg = IntegratorConfig(
        rtol=cfg.rtol, atol=cfg.atol, max_step=cfg.max_step, s_budget=min(cfg.s_budget, 40.0)
    )
    out = []
    oid = 0
    if eps * f.h(1.0) > 0:
        try:
            sep = integrate(spec, seed_pole(spec, 1, fan_cfg.seed_offset), fan_cfg)
            out.append((oid, sep.s, sep.x, sep.y, "separatrix"))
            oid += 1
        except (SeedError, StepUnderflowError):
            pass
    if not xis:
        xis = _default_fan(f, kappa, eps, fan_cfg)
    for xi in xis:
        if not (0.0 < xi < spec.x_max):
            continue
        fwd = integrate(spec, State(0.0, xi, 0.0), fan_cfg)
        bwd = integrate(spec, State(0.0, xi, 0.0), fan_cfg, direction=-1)
        s = np.concatenate([bwd.s[::-1], fwd.s[1:]])
        x = np.concatenate([bwd.x[::-1], fwd.x[1:]])
        y = np.concatenate([bwd.y[::-1], fwd.y[1:]])
        out.append((oid, s, x, y, "orbit"))
        oid += 1
    return out


def _default_fan(f, kappa: int, eps: int, cfg) -> list[float]:
    spec = PlaneSpec(kappa, eps, f)
    pts = equilibria(spec)
    try:
        sphere = dl.build_sphere(f, kappa, cfg)
        x0 = sphere.x0
        e0 = pts[0].x0 if pts else 0.5 * x0
        fan = [0.5 * (e0 + x0), 1.25 * x0, 1.6 * x0]
    except (dl.SphereObstructionError, dl.MinimalSliceError, SeedError):
        hi = spec.x_max if math.isfinite(spec.x_max) else 3.0
        fan = [0.2 * hi, 0.45 * hi, 0.7 * hi]
    if kappa == 1:
        fan = [min(x, math.pi - 0.05) for x in fan]
    return fan


def cmd_portrait(args) -> int:
    f = parse_h(args.expression)
    kappa, eps = args.kappa, args.eps
    cfg = _integrator_config(args)
    spec = PlaneSpec(kappa, eps, f)
    curve = gamma_curve(spec)
    orbits = _portrait_orbits(f, kappa, eps, args.xi or [], cfg)

    fmt = args.format or "svg"
    if fmt not in ("svg", "csv"):
        raise MismatchError(f"portrait emits svg or csv, not {fmt!r}")
    base = args.out or "portrait"
    base = base[:-4] if base.endswith((".svg", ".csv")) else base

    if fmt in ("svg",):
        if kappa == 1:
            x_max = math.pi
        else:
            data_max = max(
                [x.max() for _, _, x, _, _ in [(0, o[1], o[2], o[3], o[4]) for o in orbits]]
                + [b[1].max() for b in curve.branches if len(b[1])]
                + [1.0]
            )
            x_max = min(float(data_max) * 1.1, 6.0)
        canvas = _SvgCanvas(x_max)
        canvas.axes()
        for y0 in curve.asymptote_ys:
            canvas.hline(y0, "asymptote")
        for ys, xs in curve.branches:
            canvas.polyline(xs, ys, "gamma")
        for _, s, x, y, cls in orbits:
            canvas.polyline(x, y, cls)
        for e in equilibria(spec):
            canvas.circle(e.x0, 0.0, "equilibrium")
        with open(base + ".svg", "w") as fh:
            fh.write(canvas.document())
        log.info("portrait written to %s.svg", base)
    if fmt == "csv":
        write_orbit_csv(base + ".csv", [(o[0], o[1], o[2], o[3]) for o in orbits])
        log.info("portrait samples written to %s.csv", base)
    return EXIT_OK


def _classification_payload(rep: dl.ClassificationReport, f, kappa: int) -> dict:
    data = {
        "expression": f.source,
        "kappa": kappa,
        "kind": rep.kind.value if rep.kind else "unclassified",
        "scalars": dict(rep.scalars),
        "diagnostics": rep.diagnostics,
    }
    cr = rep.condition_report
    if cr is not None:
        data["conditions"] = {
            "is_even": cr.is_even,
            "h2r_inequality": cr.satisfies_h2r_inequality,
            "zero_multiplicity_sum": cr.zero_multiplicity_sum,
        }
    return data


def cmd_classify(args) -> int:
    f = parse_h(args.expression)
    cfg = _integrator_config(args)
    try:
        rep = dl.classify_initial(f, args.kappa, args.xi, cfg)
    except dl.InadmissibleFunctionError as exc:
        _emit_report(
            {"expression": f.source, "kappa": args.kappa, "verdict": "not admissible", "reason": str(exc)},
            args,
        )
        return EXIT_INADMISSIBLE
    _emit_report(_classification_payload(rep, f, args.kappa), args)
    return EXIT_OK


def _build_profile(args, f, cfg) -> tuple[dl.SurfaceProfile, dict]:
    kind = args.kind
    kappa = args.kappa
    periods = args.periods
    if kind == "sphere":
        sd = dl.build_sphere(f, kappa, cfg)
        return sd.profile, {"x0": sd.x0, "closure_defect": sd.closure_defect, "height": sd.height}
    if kind == "cylinder":
        rep = dl.build_cylinder(f, kappa, args.eps)
        e0 = rep.scalars["e0"]
        height = 2.0 * max(1, periods)
        n = 129
        s = np.linspace(0.0, height, n)
        arc = dl.ProfileArc(
            eps=args.eps,
            s=s,
            x=np.full(n, e0),
            y=np.zeros(n),
            yp=np.zeros(n),
            z=s.copy(),
        )
        return dl.SurfaceProfile([arc], closure="open"), dict(rep.scalars)
    if args.xi is None and kind != "torus":
        raise MismatchError(f"build {kind} requires --xi")
    if kind == "unduloid":
        verdict = dl.classify_initial(f, kappa, args.xi, cfg)
        if verdict.kind is not dl.SurfaceKind.UNDULOID:
            raise MismatchError(f"requested unduloid but classification is {verdict.kind}")
        ud = dl.build_unduloid(f, kappa, args.xi, periods, cfg)
        return ud.profile, {"xi": ud.xi, "period": ud.period, "pitch": ud.pitch}
    if kind == "nodoid":
        verdict = dl.classify_initial(f, kappa, args.xi, cfg)
        if verdict.kind is not dl.SurfaceKind.NODOID:
            raise MismatchError(f"requested nodoid but classification is {verdict.kind}")
        nd = dl.build_nodoid(f, kappa, args.xi, periods, cfg)
        return nd.profile, {
            "xi": nd.xi,
            "x1": nd.x1,
            "r": nd.r,
            "h1": nd.h1,
            "h2": nd.h2,
            "translation": nd.translation,
        }
    if kind == "torus":
        if kappa != 1:
            raise MismatchError("tori exist only on the spherical base (kappa=+1)")
        if args.xi is not None:
            verdict = dl.classify_initial(f, kappa, args.xi, cfg)
            if verdict.kind is not dl.SurfaceKind.TORUS:
                raise MismatchError(f"requested torus but classification is {verdict.kind}")
        td = dl.build_torus(f, cfg, xi=args.xi)
        return td.profile, {
            "xi": td.xi,
            "x1": td.x1,
            "r": td.r,
            "closure_defect": td.closure_defect,
        }
    raise MismatchError(f"unknown build kind {kind!r}")


def cmd_build(args) -> int:
    f = parse_h(args.expression)
    cfg = _integrator_config(args)
    try:
        profile, scalars = _build_profile(args, f, cfg)
    except dl.InadmissibleFunctionError as exc:
        sys.stderr.write(f"inadmissible prescribed function: {exc}\n")
        return EXIT_INADMISSIBLE
    base = args.out or args.kind
    model = "poincare_disk" if args.kappa == -1 else "stereographic"
    if args.model:
        want = {"disk": "poincare_disk", "stereo": "stereographic"}[args.model]
        if want != model:
            raise MismatchError(f"model {args.model!r} is not available for kappa={args.kappa}")
        model = want
    write_profile_csv(base + ".csv", profile)
    verts, faces = revolve_mesh(profile, args.kappa, model, args.theta_samples)
    write_obj(base + ".obj", verts, faces)
    log.info(
        "build %s: %d arcs, mesh %d vertices / %d faces, scalars %s",
        args.kind,
        len(profile.arcs),
        len(verts),
        len(faces),
        {k: f"{v:.6g}" for k, v in scalars.items()},
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("expression", help="prescribed function H(y), e.g. '1+y^2'")
    p.add_argument("--kappa", type=int, choices=(-1, 1), required=True, help="base curvature sign")
    p.add_argument("--out", help="output path (base path for multi-file outputs)")
    p.add_argument("--json", action="store_true", help="machine-readable report variant")
    p.add_argument("--rtol", type=float, default=None, help="integrator relative tolerance")
    p.add_argument("--atol", type=float, default=None, help="integrator absolute tolerance")


def build_parser() -> _Parser:
    parser = _Parser(prog="hdelaunay", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="admissibility and structure report")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("portrait", help="phase-plane portrait (SVG and/or CSV)")
    _add_common(p)
    p.add_argument("--eps", type=int, choices=(-1, 1), default=1, help="branch sign")
    p.add_argument("--xi", type=float, action="append", help="orbit fan radius (repeatable)")
    p.add_argument("--format", choices=("svg", "csv"), default=None)
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("classify", help="classify the surface through (xi, 0)")
    _add_common(p)
    p.add_argument("--xi", type=float, required=True, help="initial meridian radius")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", help="profile CSV + revolution mesh OBJ")
    p.add_argument("kind", choices=("sphere", "cylinder", "unduloid", "nodoid", "torus"))
    _add_common(p)
    p.add_argument("--eps", type=int, choices=(-1, 1), default=1, help="branch sign (cylinder)")
    p.add_argument("--xi", type=float, default=None, help="initial meridian radius")
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--model", choices=("disk", "stereo"), default=None)
    p.add_argument("--theta-samples", type=int, default=48)
    p.set_defaults(func=cmd_build)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("DELAUNAY_LOG", "error").lower()
    logging.basicConfig(
        level={"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
            level, logging.ERROR
        ),
        format="%(name)s %(levelname)s: %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "theta_samples", 8) < 8:
        sys.stderr.write("error: --theta-samples must be >= 8\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except HParseError as exc:
        sys.stderr.write(f"syntax error: {exc}\n")
        return EXIT_USAGE
    except dl.InadmissibleFunctionError as exc:
        sys.stderr.write(f"inadmissible prescribed function: {exc}\n")
        return EXIT_INADMISSIBLE
    except MismatchError as exc:
        sys.stderr.write(f"classification mismatch: {exc}\n")
        return EXIT_MISMATCH
    except _NUMERIC_ERRORS as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
