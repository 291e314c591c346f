"""Static geometry of the phase half-strip for one curvature and branch sign.

The first-order system for an arc-length profile (x, y) = (axis distance,
angle function) is

    x' = y,    y' = (1 - y^2) cot_kappa(x) - 2 eps H(y) sqrt(1 - y^2),

on (0, inf) x (-1, 1) for kappa = -1 and (0, pi) x (-1, 1) for kappa = +1.
This module provides the vector field, the nullcline graph x = Gamma(y)
with its continuation across zeros of H, its asymptotes, equilibria with
their linearization, and the monotonicity-region query.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geomk import check_kappa, kcot
from .hfunc import HFunction, find_zeros, scan_bisect

__all__ = [
    "PlaneSpec",
    "GammaCurve",
    "EquilibriumPoint",
    "RegionTag",
    "StripDomainError",
    "OnBoundaryError",
    "vector_field",
    "gamma_x",
    "gamma_curve",
    "gamma_asymptotes",
    "equilibria",
    "linearization",
    "monotonicity",
]

EQUILIBRIUM_FIELD_TOL = 1e-12
HPRIME_ZERO_TOL = 1e-8


class StripDomainError(ValueError):
    """Query outside the open phase half-strip."""


class OnBoundaryError(ValueError):
    """Monotonicity queried on the nullcline or the meridian axis."""


@dataclass(frozen=True)
class PlaneSpec:
    """One phase plane: curvature sign, branch sign eps = sign(z'), and H."""

    kappa: int
    eps: int
    f: HFunction

    def __post_init__(self):
        check_kappa(self.kappa)
        if self.eps not in (-1, 1):
            raise ValueError(f"eps must be -1 or +1, got {self.eps!r}")

    @property
    def x_max(self) -> float:
        return math.pi if self.kappa == 1 else math.inf


@dataclass(frozen=True)
class GammaCurve:
    """Sampled nullcline with continuation metadata.

    branches: continuous pieces as (y, x) array pairs, y ascending.
    asymptote_ys: vertical-asymptote heights (kappa = -1 only).
    extended: per zero of H, (y0, True if a pi-shift junction, i.e. H
    changes sign there) -- kappa = +1 only.
    """

    branches: tuple[tuple[np.ndarray, np.ndarray], ...]
    asymptote_ys: tuple[float, ...]
    extended: tuple[tuple[float, bool], ...]


@dataclass(frozen=True)
class EquilibriumPoint:
    x0: float
    eps: int
    stability_kind: str  # "center_candidate" or "degenerate"


@dataclass(frozen=True)
class RegionTag:
    """Monotonicity region label with the predicted signs of x' and y'."""

    region: int  # 1..4
    sign_x: int
    sign_y: int


def _check_strip(spec: PlaneSpec, x: float) -> None:
    if not (0.0 < x < spec.x_max):
        raise StripDomainError(f"x={x!r} outside the open strip (0, {spec.x_max})")


def vector_field(spec: PlaneSpec, x: float, y: float) -> tuple[float, float]:
    """(x', y') at a phase point; at |y| = 1 both terms of y' vanish."""
    _check_strip(spec, x)
    if abs(y) > 1.0:
        raise StripDomainError(f"|y| must be <= 1, got y={y!r}")
    one = 1.0 - y * y
    if one <= 0.0:
        return (y, 0.0)
    dy = one * kcot(spec.kappa, x) - 2.0 * spec.eps * spec.f.h(y) * math.sqrt(one)
    return (y, dy)


def gamma_x(spec: PlaneSpec, y: float) -> float | None:
    """x-coordinate of the nullcline at height y, after continuation.

    kappa = +1: always defined and continuous across zeros of H; computed
    as arccot of 2 eps H / sqrt(1-y^2) with values in (0, pi), which adds
    the pi shift exactly where H changes sign and takes the value pi/2 at
    zeros of H. kappa = -1: defined only where 0 < sqrt(1-y^2)/(2 eps H) < 1;
    absence (None) is data, not an error.
    """
    if not (-1.0 < y < 1.0):
        raise StripDomainError(f"y={y!r} outside (-1, 1)")
    root = math.sqrt(1.0 - y * y)
    h = spec.f.h(y)
    if spec.kappa == 1:
        return 0.5 * math.pi - math.atan(2.0 * spec.eps * h / root)
    if spec.eps * h <= 0.0:
        return None
    arg = root / (2.0 * spec.eps * h)
    if arg >= 1.0:
        return None
    return math.atanh(arg)


def gamma_asymptotes(spec: PlaneSpec) -> list[float]:
    """Heights y0 in (-1,1) where the kappa=-1 nullcline escapes to infinity.

    Solves sqrt(1-y^2) = 2 eps H(y). Simple crossings come from a sign
    scan; tangential solutions (grazing contact) are picked up as critical
    points of the difference where it vanishes.
    """
    if spec.kappa != -1:
        raise ValueError("asymptotes only occur for kappa=-1")
    h, dh = spec.f.h, spec.f.dh
    e = float(spec.eps)

    def d(t: float) -> float:
        return 2.0 * e * h(t) - math.sqrt(1.0 - t * t)

    def dd(t: float) -> float:
        r = math.sqrt(max(1e-300, 1.0 - t * t))
        return 2.0 * e * dh(t) + t / r

    lo, hi = -1.0 + 1e-12, 1.0 - 1e-12
    roots = list(scan_bisect(d, lo, hi))
    for r in scan_bisect(dd, lo, hi):
        if abs(d(r)) <= 1e-9 and all(abs(r - q) > 1e-9 for q in roots):
            roots.append(r)
    roots = [r for r in roots if -1.0 < r < 1.0]
    roots.sort()
    return roots


def gamma_curve(spec: PlaneSpec, n: int = 1024) -> GammaCurve:
    """Sample the nullcline into continuous branches for analysis/plotting."""
    ys = np.linspace(-1.0 + 1e-9, 1.0 - 1e-9, n)
    xs = [gamma_x(spec, float(t)) for t in ys]
    branches = []
    cur_y: list[float] = []
    cur_x: list[float] = []
    for t, v in zip(ys, xs):
        if v is None:
            if cur_y:
                branches.append((np.array(cur_y), np.array(cur_x)))
                cur_y, cur_x = [], []
            continue
        cur_y.append(float(t))
        cur_x.append(v)
    if cur_y:
        branches.append((np.array(cur_y), np.array(cur_x)))
    asym = tuple(gamma_asymptotes(spec)) if spec.kappa == -1 else ()
    extended = ()
    if spec.kappa == 1:
        extended = tuple((z.y0, z.sign_change) for z in find_zeros(spec.f) if -1.0 < z.y0 < 1.0)
    return GammaCurve(tuple(branches), asym, extended)


def equilibria(spec: PlaneSpec) -> list[EquilibriumPoint]:
    """Fixed points of the system in this plane (always on {y = 0}).

    kappa = -1: a single point artanh(1/(2 eps H(0))), existing only when
    2 eps H(0) > 1. kappa = +1: exactly one point per plane at
    arccot(2 eps H(0)) in (0, pi); the two planes' points are
    pi-complementary and coincide at pi/2 exactly when H(0) = 0.
    """
    h0 = spec.f.h(0.0)
    lam2 = spec.kappa + 4.0 * h0 * h0
    kind = "center_candidate" if lam2 > 0.0 else "degenerate"
    if spec.kappa == 1:
        x0 = 0.5 * math.pi - math.atan(2.0 * spec.eps * h0)
        return [EquilibriumPoint(x0, spec.eps, kind)]
    c = 2.0 * spec.eps * h0
    if c <= 1.0:
        return []
    return [EquilibriumPoint(math.atanh(1.0 / c), spec.eps, kind)]


def linearization(
    spec: PlaneSpec, e: EquilibriumPoint | None = None
) -> tuple[np.ndarray, tuple[complex, complex], str]:
    """Linearized system at the equilibrium: matrix, eigenvalues, kind.

    The matrix [[0, 1], [-kappa - 4 H(0)^2, 0]] is valid only when
    H'(0) = 0 (automatic for even H); a nonzero H'(0) is rejected. The
    kind is "center_candidate" when kappa + 4 H(0)^2 > 0 (purely imaginary
    eigenvalues) and "degenerate" when it vanishes -- a degenerate point is
    reported, never classified as a center.
    """
    dh0 = spec.f.dh(0.0)
    if abs(dh0) > HPRIME_ZERO_TOL:
        raise ValueError(
            f"linearization formula requires H'(0)=0 (even H); got H'(0)={dh0:.3g}"
        )
    if e is not None:
        _, dy = vector_field(spec, e.x0, 0.0)
        if abs(dy) > EQUILIBRIUM_FIELD_TOL:
            raise ValueError(f"point x0={e.x0!r} is not an equilibrium of this plane")
    h0 = spec.f.h(0.0)
    a21 = -spec.kappa - 4.0 * h0 * h0
    m = np.array([[0.0, 1.0], [a21, 0.0]])
    if a21 < 0.0:
        w = math.sqrt(-a21)
        eig = (complex(0.0, w), complex(0.0, -w))
        kind = "center_candidate"
    elif a21 == 0.0:
        eig = (complex(0.0, 0.0), complex(0.0, 0.0))
        kind = "degenerate"
    else:
        w = math.sqrt(a21)
        eig = (complex(w, 0.0), complex(-w, 0.0))
        kind = "saddle"
    return m, eig, kind


def monotonicity(spec: PlaneSpec, x: float, y: float) -> RegionTag:
    """Region tag for an off-boundary phase point.

    Regions (for the canonical compact-arc configuration): 1 = above the
    axis and right of the nullcline (x increasing, y decreasing), 2 = below
    axis, right of nullcline (both decreasing), 3 = below/left (x
    decreasing, y increasing), 4 = above/left (both increasing). Where the
    kappa=-1 nullcline is absent at this height the field has y' > 0, i.e.
    the point behaves as 'left of' the curve.
    """
    _check_strip(spec, x)
    if not (-1.0 < y < 1.0):
        raise StripDomainError(f"y={y!r} outside (-1, 1)")
    if y == 0.0:
        raise OnBoundaryError("monotonicity undefined on the axis {y=0}")
    gx = gamma_x(spec, y)
    if gx is not None and abs(x - gx) <= 1e-12:
        raise OnBoundaryError("point lies on the nullcline")
    right = gx is not None and x > gx
    if y > 0.0:
        region = 1 if right else 4
    else:
        region = 2 if right else 3
    return RegionTag(region, 1 if y > 0 else -1, -1 if right else 1)
