"""Curvature-sign dependent geometry of the base surface and its product.

kappa = +1 selects the round sphere, kappa = -1 the hyperbolic plane, both
modeled as the unit quadric x1^2 + x2^2 + kappa*x3^2 = kappa inside R^3
(Lorentzian for kappa = -1) crossed with a vertical height axis. Provides
the kappa-trigonometry, the rotational embedding of profile curves,
principal curvatures in phase variables, and the disk / stereographic
chart projections used for plotting.

All operations are pure functions on immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hfunc import HFunction

__all__ = [
    "TrigDomainError",
    "ProjectionPoleError",
    "AmbientPoint",
    "ProfileSample",
    "check_kappa",
    "ktrig",
    "ksin",
    "kcos",
    "kcot",
    "embed_profile",
    "surface_point",
    "quadric_residual",
    "principal_curvatures",
    "mean_residual",
    "project_model",
    "finite_difference_derivative",
]

CURVATURE_GUARD = 1e-6  # |y| > 1 - guard: kappa_1 formula degenerates


class TrigDomainError(ValueError):
    """Argument outside the natural domain (asymptote, not a numeric bug)."""


class ProjectionPoleError(ValueError):
    """Stereographic projection evaluated at its excluded pole."""


def check_kappa(kappa: int) -> int:
    if kappa not in (-1, 1):
        raise ValueError(f"kappa must be -1 or +1, got {kappa!r}")
    return kappa


class AmbientPoint(NamedTuple):
    """Point of the product space in quadric coordinates (x1, x2, x3, z)."""

    x1: float
    x2: float
    x3: float
    z: float


@dataclass
class ProfileSample:
    """One arc-length sample of a profile curve in phase variables.

    y is the angle function (= x'(s)); eps = sign(z') selects the branch.
    yp carries dy/ds when the producer recorded it.
    """

    s: float
    x: float
    y: float
    z: float
    eps: int
    yp: float | None = None


def ksin(kappa: int, t: float) -> float:
    return math.sin(t) if kappa == 1 else math.sinh(t)


def kcos(kappa: int, t: float) -> float:
    return math.cos(t) if kappa == 1 else math.cosh(t)


def kcot(kappa: int, t: float) -> float:
    if kappa == 1:
        s = math.sin(t)
        if s == 0.0:
            raise TrigDomainError(f"cot undefined at t={t!r} (multiple of pi)")
        return math.cos(t) / s
    if t == 0.0:
        raise TrigDomainError("coth undefined at t=0")
    return math.cosh(t) / math.sinh(t)


def ktrig(kind: str, kappa: int, t: float) -> float:
    """Evaluate a kappa-trigonometric function.

    kind in {sin, cos, tan, cot, arctan}: circular for kappa=+1, hyperbolic
    for kappa=-1. arctan with kappa=-1 is artanh, defined on (-1, 1) only;
    arguments outside raise TrigDomainError to distinguish an asymptote of
    the phase-plane graph from a numerical failure.
    """
    check_kappa(kappa)
    if kind == "sin":
        return ksin(kappa, t)
    if kind == "cos":
        return kcos(kappa, t)
    if kind == "tan":
        if kappa == 1:
            c = math.cos(t)
            if c == 0.0:
                raise TrigDomainError(f"tan undefined at t={t!r}")
            return math.sin(t) / c
        return math.tanh(t)
    if kind == "cot":
        return kcot(kappa, t)
    if kind == "arctan":
        if kappa == 1:
            return math.atan(t)
        if abs(t) >= 1.0:
            raise TrigDomainError(f"artanh undefined for |t| >= 1 (asymptote), got t={t!r}")
        return math.atanh(t)
    raise ValueError(f"unknown kind {kind!r}")


def _check_profile_x(x: float, kappa: int) -> None:
    if x < 0.0:
        raise ValueError(f"axis distance must be >= 0, got x={x!r}")
    if kappa == 1 and x > math.pi:
        raise ValueError(f"axis distance must be <= pi on the sphere, got x={x!r}")


def embed_profile(x: float, z: float, kappa: int) -> AmbientPoint:
    """Profile-plane point at axis distance x and height z on the quadric."""
    check_kappa(kappa)
    _check_profile_x(x, kappa)
    return AmbientPoint(ksin(kappa, x), 0.0, kcos(kappa, x), z)


def surface_point(x: float, z: float, theta: float, kappa: int) -> AmbientPoint:
    """Rotate the profile point by angle theta around the vertical axis."""
    check_kappa(kappa)
    _check_profile_x(x, kappa)
    r = ksin(kappa, x)
    return AmbientPoint(r * math.cos(theta), r * math.sin(theta), kcos(kappa, x), z)


def quadric_residual(p: AmbientPoint, kappa: int) -> float:
    return abs(p.x1 * p.x1 + p.x2 * p.x2 + kappa * p.x3 * p.x3 - kappa)


def principal_curvatures(p: ProfileSample, yprime: float, kappa: int) -> tuple[float, float]:
    """Principal curvatures (k1, k2) at a profile sample, in phase variables.

    k1 = -eps * y' / sqrt(1 - y^2) is the geodesic curvature of the profile,
    k2 = eps * sqrt(1 - y^2) * cot_kappa(x) the rotational curvature. The
    formula for k1 degenerates at |y| = 1; callers must stay inside the
    guard band and use one-sided expansions at turning points and poles.
    """
    check_kappa(kappa)
    if abs(p.y) >= 1.0:
        raise ValueError(f"|y| must be < 1 for the phase-variable formula, got y={p.y!r}")
    root = math.sqrt(1.0 - p.y * p.y)
    k1 = -p.eps * yprime / root
    k2 = p.eps * root * kcot(kappa, p.x)
    return k1, k2


def mean_residual(samples: list[ProfileSample], f: HFunction, kappa: int) -> float:
    """Max defect of the defining curvature equation over a profile.

    Uses each sample's recorded yp. Samples inside the |y| > 1 - 1e-6 guard
    band are skipped (the k1 formula is a removable 0/0 there). A clean
    profile with consistent (x, y, yp) bookkeeping gives residuals at
    round-off level; perturbing any sample's state shows up at first order.
    """
    worst = 0.0
    for p in samples:
        if abs(p.y) > 1.0 - CURVATURE_GUARD:
            continue
        if p.yp is None:
            raise ValueError("sample without recorded yp")
        k1, k2 = principal_curvatures(p, p.yp, kappa)
        worst = max(worst, abs(k1 + k2 - 2.0 * f.h(p.y)))
    return worst


def project_model(p: AmbientPoint, model: str, kappa: int) -> tuple[float, float, float]:
    """Chart projection of an ambient point, for plotting and meshes.

    poincare_disk (kappa=-1): hyperboloid to unit disk, (x1,x2)/(1+x3).
    stereographic (kappa=+1): projection from (0,0,-1), the antipode of the
    rotation-axis pole, so the axis maps to the disk center; undefined at
    the projection pole itself. Height passes through unchanged.
    """
    check_kappa(kappa)
    if model == "poincare_disk":
        if kappa != -1:
            raise ValueError("poincare_disk requires kappa=-1")
    elif model == "stereographic":
        if kappa != 1:
            raise ValueError("stereographic requires kappa=+1")
        if abs(p.x3 + 1.0) <= 1e-12:
            raise ProjectionPoleError("stereographic projection pole (0,0,-1) hit")
    else:
        raise ValueError(f"unknown model {model!r}")
    d = 1.0 + p.x3
    return p.x1 / d, p.x2 / d, p.z


def finite_difference_derivative(s: np.ndarray, v: np.ndarray) -> np.ndarray:
    """4th-order first derivative of sampled data on a non-uniform grid.

    Five-point local polynomial differentiation (one-sided near the ends).
    Used by consistency checks that need a derivative estimate independent
    of the ODE right-hand side.
    """
    s = np.asarray(s, dtype=float)
    v = np.asarray(v, dtype=float)
    n = len(s)
    if n < 5:
        raise ValueError("need at least 5 samples")
    out = np.empty(n)
    for i in range(n):
        j0 = min(max(i - 2, 0), n - 5)
        ss = s[j0 : j0 + 5] - s[i]
        vv = v[j0 : j0 + 5]
        # derivative at 0 of the degree-4 interpolant
        coeffs = np.linalg.solve(np.vander(ss, 5, increasing=True), vv)
        out[i] = coeffs[1]
    return out
