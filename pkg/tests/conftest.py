"""Shared corpus and numeric helpers for the test suite."""

import math

import numpy as np
import pytest

from hdelaunay.hfunc import parse_h

# Expression corpus exercising every grammar production (>= 30 entries).
EXPRESSION_CORPUS = [
    "1",
    "0.5",
    "-1",
    "y",
    "-y",
    "1+y^2",
    "1 - y^2",
    "y^2",
    "y^3",
    "y^4 - 0.5*y^2",
    "2*cos(y)",
    "cos(y)+y^4",
    "sin(y)",
    "tan(y/2)",
    "sinh(y)",
    "cosh(y)",
    "tanh(y)",
    "exp(y)",
    "exp(-(y^2))",
    "sqrt(1+y^2)",
    "sqrt(2+y)",
    "y/2",
    "(1+y)*(1-y)",
    "1/(2+y)",
    "0.3*y^5 - y",
    "2.5e-1 + y^2",
    "-(y^2)",
    "(-y)^3",
    "cos(2*y)",
    "sinh(y)/cosh(y)",
    "1 + y^2 + y^4",
    "2*(1+y^2)/(2+y^2)",
    "0.5+y^4",
]

# Admissible even functions per base curvature (H(1) != 0, class conditions).
ADMISSIBLE_H2R = ["1", "1+y^2", "2*cos(y)", "cosh(y)", "0.6+0.5*y^2", "sqrt(1+y^2)"]
ADMISSIBLE_S2R = ["1", "1+y^2", "2*cos(y)", "y^2-0.25", "0.5+y^4", "cos(2*y)"]


@pytest.fixture(scope="session")
def h_one():
    return parse_h("1")


@pytest.fixture(scope="session")
def h_fig():
    """The quadratic profile function used in the figure-style checks."""
    return parse_h("1+y^2")


def hermite(s, v, dv, sq):
    """Cubic Hermite interpolation of sampled (v, dv) data at points sq."""
    s = np.asarray(s, float)
    v = np.asarray(v, float)
    dv = np.asarray(dv, float)
    sq = np.atleast_1d(np.asarray(sq, float))
    i = np.clip(np.searchsorted(s, sq), 1, len(s) - 1)
    s0, s1 = s[i - 1], s[i]
    h = s1 - s0
    t = (sq - s0) / h
    t2, t3 = t * t, t * t * t
    return (
        (2 * t3 - 3 * t2 + 1) * v[i - 1]
        + (t3 - 2 * t2 + t) * h * dv[i - 1]
        + (-2 * t3 + 3 * t2) * v[i]
        + (t3 - t2) * h * dv[i]
    )


def arc_x_at_y(arc, yq):
    """x of a turning arc at given heights y; y is strictly monotone along
    such an arc, so bisect arc length on the Hermite interpolant."""
    out = []
    s_lo, s_hi = float(arc.s[0]), float(arc.s[-1])
    for y_target in np.atleast_1d(yq):
        a, b = s_lo, s_hi
        fa = hermite(arc.s, arc.y, arc.yp, a)[0] - y_target
        for _ in range(90):
            m = 0.5 * (a + b)
            fm = hermite(arc.s, arc.y, arc.yp, m)[0] - y_target
            if (fa < 0.0) != (fm < 0.0):
                b = m
            else:
                a, fa = m, fm
            if b - a < 1e-13:
                break
        out.append(hermite(arc.s, arc.x, arc.y, 0.5 * (a + b))[0])
    return np.array(out)


def bisect_root(fn, lo, hi, iters=200):
    """Plain bisection for test oracles; requires a sign change."""
    flo = fn(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if (flo < 0.0) != (fm < 0.0):
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo < 1e-15:
            break
    return 0.5 * (lo + hi)


def nodoid_oracle_h2r(xi, h0=1.0):
    """Closed-form turning and inner radii for constant H on the hyperbolic
    base, from the conserved quantity of each branch."""
    level = math.sqrt(1.0) * math.sinh(xi) - 2.0 * h0 * (math.cosh(xi) - 1.0)
    x1 = math.acosh(1.0 - level / (2.0 * h0))
    target = 2.0 * h0 * (math.cosh(x1) - 1.0)
    r = bisect_root(
        lambda t: math.sinh(t) + 2.0 * h0 * (math.cosh(t) - 1.0) - target, 1e-9, x1
    )
    return x1, r


def mesh_stats(path):
    """(V, E, F, chi, closed_manifold) of an OBJ file."""
    V = F = 0
    edge_faces = {}
    for line in open(path):
        if line.startswith("v "):
            V += 1
        elif line.startswith("f "):
            F += 1
            idx = [int(t) - 1 for t in line.split()[1:]]
            for a, b in ((idx[0], idx[1]), (idx[1], idx[2]), (idx[2], idx[0])):
                e = (min(a, b), max(a, b))
                edge_faces[e] = edge_faces.get(e, 0) + 1
    E = len(edge_faces)
    closed = all(c == 2 for c in edge_faces.values())
    return V, E, F, V - E + F, closed


def polyline_intersections(ax, ay, bx, by):
    """Count transversal crossings between two polylines (brute force)."""
    count = 0
    for i in range(len(ax) - 1):
        p = np.array([ax[i], ay[i]])
        r = np.array([ax[i + 1] - ax[i], ay[i + 1] - ay[i]])
        for j in range(len(bx) - 1):
            q = np.array([bx[j], by[j]])
            s = np.array([bx[j + 1] - bx[j], by[j + 1] - by[j]])
            denom = r[0] * s[1] - r[1] * s[0]
            if denom == 0.0:
                continue
            d = q - p
            t = (d[0] * s[1] - d[1] * s[0]) / denom
            u = (d[0] * r[1] - d[1] * r[0]) / denom
            if 1e-12 < t < 1 - 1e-12 and 1e-12 < u < 1 - 1e-12:
                count += 1
    return count
