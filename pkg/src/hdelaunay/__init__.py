"""Rotational prescribed-mean-curvature surfaces over hyperbolic and
spherical bases: phase-plane analysis, profile integration, and the
Delaunay-type classification (sphere / cylinder / unduloid / nodoid /
torus), with portrait, profile and mesh emission via the CLI.
"""

from .delaunay import (
    ClassificationReport,
    NodoidData,
    SphereData,
    SurfaceKind,
    SurfaceProfile,
    TorusData,
    UnduloidData,
    build_cylinder,
    build_nodoid,
    build_sphere,
    build_torus,
    build_unduloid,
    check_closed_necessary,
    check_sphere_necessary,
    classify_initial,
    find_torus_parameter,
)
from .geomk import (
    AmbientPoint,
    ProfileSample,
    embed_profile,
    ktrig,
    mean_residual,
    principal_curvatures,
    project_model,
    surface_point,
)
from .hfunc import (
    HFunction,
    HParseError,
    ZeroRecord,
    class_membership,
    eval_h,
    find_zeros,
    is_even,
    parse_h,
)
from .orbit import (
    Event,
    EventKind,
    IntegratorConfig,
    Orbit,
    State,
    detect_closed,
    first_integral_cmc,
    integrate,
    seed_pole,
    seed_turning,
    turning_radius,
    z_quadrature,
)
from .phaseplane import (
    EquilibriumPoint,
    PlaneSpec,
    equilibria,
    gamma_asymptotes,
    gamma_curve,
    gamma_x,
    linearization,
    monotonicity,
    vector_field,
)

__version__ = "0.1.0"

__all__ = [
    "parse_h",
    "eval_h",
    "find_zeros",
    "is_even",
    "class_membership",
    "HFunction",
    "HParseError",
    "ZeroRecord",
    "ktrig",
    "embed_profile",
    "surface_point",
    "principal_curvatures",
    "mean_residual",
    "project_model",
    "AmbientPoint",
    "ProfileSample",
    "PlaneSpec",
    "EquilibriumPoint",
    "vector_field",
    "gamma_x",
    "gamma_curve",
    "gamma_asymptotes",
    "equilibria",
    "linearization",
    "monotonicity",
    "State",
    "Event",
    "EventKind",
    "Orbit",
    "IntegratorConfig",
    "seed_pole",
    "seed_turning",
    "integrate",
    "turning_radius",
    "z_quadrature",
    "detect_closed",
    "first_integral_cmc",
    "SurfaceKind",
    "SurfaceProfile",
    "SphereData",
    "UnduloidData",
    "NodoidData",
    "TorusData",
    "ClassificationReport",
    "check_closed_necessary",
    "check_sphere_necessary",
    "build_sphere",
    "build_cylinder",
    "build_unduloid",
    "build_nodoid",
    "build_torus",
    "find_torus_parameter",
    "classify_initial",
]
