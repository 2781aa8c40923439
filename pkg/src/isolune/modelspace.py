"""Geometry kernel for the three constant-curvature model planes.

Charts are embedding charts: the Euclidean plane sits in R^3 as z = 0, the
sphere of curvature c = k^2 is the radius-1/k sphere in R^3, and the
hyperbolic plane of curvature c = -k^2 is the upper sheet of the radius-1/k
hyperboloid in Minkowski 3-space with signature (+, +, -) and coordinate
order (x, y, t).  In these charts every curve of constant geodesic curvature
is a planar section, so arc propagation has a closed form through the
generalized trigonometric functions sn/cs/vs below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

Vec3 = tuple[float, float, float]

EUCLIDEAN = "euclidean"
SPHERICAL = "spherical"
HYPERBOLIC = "hyperbolic"

# |p| * x^2 below this switches sn/cs/vs to series forms (cancellation guard
# for horocycle-like arcs and the c -> 0 limit).
_SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class Tolerances:
    """The single record of numeric tolerances used across the package."""

    pose_validity: float = 1e-12   # embedding / unit-norm pose constraints
    closure: float = 1e-9          # closed-curve closure residual
    quad_abs: float = 1e-10        # absolute quadrature tolerance per arc
    area_agreement: float = 1e-8   # relative quadrature vs Gauss-Bonnet check


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class ModelSpace:
    """Simply connected two-dimensional space of constant curvature c."""

    c: float

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise InputError(f"curvature must be finite, got {self.c}")

    @property
    def k(self) -> float:
        """Curvature scale sqrt(|c|); zero exactly when c = 0."""
        return math.sqrt(abs(self.c))

    @property
    def kind(self) -> str:
        if self.c > 0.0:
            return SPHERICAL
        if self.c < 0.0:
            return HYPERBOLIC
        return EUCLIDEAN

    def origin_pose(self) -> "Pose":
        """Canonical pose: chart origin, heading along +x."""
        if self.c == 0.0:
            return Pose((0.0, 0.0, 0.0), (1.0, 0.0, 0.0))
        return Pose((0.0, 0.0, 1.0 / self.k), (1.0, 0.0, 0.0))


@dataclass(frozen=True)
class Pose:
    """A point of the model space together with a unit tangent direction."""

    position: Vec3
    direction: Vec3


# ---------------------------------------------------------------------------
# generalized trigonometry
#
# sn(p, x) solves f'' = -p f with f(0)=0, f'(0)=1:
#   sin(sqrt(p) x)/sqrt(p)   for p > 0
#   x                        for p = 0
#   sinh(sqrt(-p) x)/sqrt(-p) for p < 0
# cs = sn', and vs(p, x) = (1 - cs(p, x))/p = integral of sn.
# The parameter p is a curvature-like quantity: the ambient c for metric
# formulas, kappa^2 + c for arc propagation.
# ---------------------------------------------------------------------------

def sn(p: float, x: float) -> float:
    """Generalized sine with curvature parameter p."""
    if abs(p) * x * x < _SERIES_CUTOFF:
        x2 = x * x
        return x * (1.0 - p * x2 / 6.0 + p * p * x2 * x2 / 120.0)
    r = math.sqrt(abs(p))
    if p > 0.0:
        return math.sin(r * x) / r
    return math.sinh(r * x) / r


def cs(p: float, x: float) -> float:
    """Generalized cosine (derivative of sn)."""
    if abs(p) * x * x < _SERIES_CUTOFF:
        x2 = x * x
        return 1.0 - p * x2 / 2.0 + p * p * x2 * x2 / 24.0
    r = math.sqrt(abs(p))
    if p > 0.0:
        return math.cos(r * x)
    return math.cosh(r * x)


def vs(p: float, x: float) -> float:
    """Generalized versine (1 - cs)/p, continuous through p = 0."""
    if abs(p) * x * x < _SERIES_CUTOFF:
        x2 = x * x
        return 0.5 * x2 * (1.0 - p * x2 / 12.0 + p * p * x2 * x2 / 360.0)
    return (1.0 - cs(p, x)) / p


def sn_arr(p: float, x: np.ndarray) -> np.ndarray:
    """Vectorized sn over an array of arclengths."""
    x = np.asarray(x, dtype=float)
    if p == 0.0:
        return x.copy()
    out = np.empty_like(x)
    small = np.abs(p) * x * x < _SERIES_CUTOFF
    xs = x[small]
    out[small] = xs * (1.0 - p * xs**2 / 6.0 + p * p * xs**4 / 120.0)
    xl = x[~small]
    r = math.sqrt(abs(p))
    out[~small] = np.sin(r * xl) / r if p > 0.0 else np.sinh(r * xl) / r
    return out


def cs_arr(p: float, x: np.ndarray) -> np.ndarray:
    """Vectorized cs over an array of arclengths."""
    x = np.asarray(x, dtype=float)
    if p == 0.0:
        return np.ones_like(x)
    out = np.empty_like(x)
    small = np.abs(p) * x * x < _SERIES_CUTOFF
    xs = x[small]
    out[small] = 1.0 - p * xs**2 / 2.0 + p * p * xs**4 / 24.0
    xl = x[~small]
    r = math.sqrt(abs(p))
    out[~small] = np.cos(r * xl) if p > 0.0 else np.cosh(r * xl)
    return out


def vs_arr(p: float, x: np.ndarray) -> np.ndarray:
    """Vectorized vs over an array of arclengths."""
    x = np.asarray(x, dtype=float)
    if p == 0.0:
        return 0.5 * x * x
    out = np.empty_like(x)
    small = np.abs(p) * x * x < _SERIES_CUTOFF
    xs = x[small]
    out[small] = 0.5 * xs**2 * (1.0 - p * xs**2 / 12.0 + p * p * xs**4 / 360.0)
    xl = x[~small]
    r = math.sqrt(abs(p))
    cl = np.cos(r * xl) if p > 0.0 else np.cosh(r * xl)
    out[~small] = (1.0 - cl) / p
    return out


# ---------------------------------------------------------------------------
# ambient linear algebra (Euclidean for c >= 0, Minkowski for c < 0)
# ---------------------------------------------------------------------------

def ambient_dot(space: ModelSpace, u: Vec3, v: Vec3) -> float:
    """Inner product of the embedding chart for this space."""
    if space.c < 0.0:
        return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def left_normal(space: ModelSpace, position: Vec3, direction: Vec3) -> Vec3:
    """Unit tangent obtained by rotating `direction` a quarter turn left."""
    dx, dy, dz = direction
    if space.c == 0.0:
        return (-dy, dx, 0.0)
    px, py, pz = position
    cx = py * dz - pz * dy
    cy = pz * dx - px * dz
    cz = px * dy - py * dx
    k = space.k
    if space.c > 0.0:
        return (k * cx, k * cy, k * cz)
    # Minkowski cross product G (p x d), G = diag(1, 1, -1)
    return (k * cx, k * cy, -k * cz)


def validate_point(space: ModelSpace, p: Vec3, tol: Tolerances = DEFAULT_TOL) -> None:
    """Raise InputError unless p satisfies the chart's embedding constraint."""
    if not all(math.isfinite(v) for v in p):
        raise InputError(f"point has non-finite coordinates: {p}")
    c = space.c
    if c == 0.0:
        if abs(p[2]) > tol.pose_validity:
            raise InputError(f"Euclidean point must have z = 0, got z = {p[2]}")
        return
    # k^2 <p,p> = 1 on the sphere, k^2 <p,p>_M = -1 on the hyperboloid
    target = 1.0 if c > 0.0 else -1.0
    res = abs(abs(c) * ambient_dot(space, p, p) - target)
    if res > tol.pose_validity:
        raise InputError(f"point off the embedded surface by {res:.3e}")
    if c < 0.0 and p[2] <= 0.0:
        raise InputError("hyperboloid point must lie on the upper sheet (t > 0)")


def validate_pose(space: ModelSpace, pose: Pose, tol: Tolerances = DEFAULT_TOL) -> None:
    """Raise InputError unless the pose satisfies the chart invariants."""
    validate_point(space, pose.position, tol)
    d = pose.direction
    if not all(math.isfinite(v) for v in d):
        raise InputError(f"direction has non-finite coordinates: {d}")
    nrm = ambient_dot(space, d, d)
    if abs(nrm - 1.0) > tol.pose_validity:
        raise InputError(f"direction norm off unit by {abs(nrm - 1.0):.3e}")
    if space.c == 0.0:
        if abs(d[2]) > tol.pose_validity:
            raise InputError("Euclidean direction must have z = 0")
    else:
        ortho = space.k * ambient_dot(space, pose.position, d)
        if abs(ortho) > tol.pose_validity:
            raise InputError(f"direction not tangent to the surface, defect {ortho:.3e}")


def _project_pose(space: ModelSpace, p: Vec3, d: Vec3) -> Pose:
    """Re-project onto the embedded surface; keeps long compositions tight."""
    c = space.c
    if c == 0.0:
        nd = math.hypot(d[0], d[1])
        return Pose((p[0], p[1], 0.0), (d[0] / nd, d[1] / nd, 0.0))
    k = space.k
    if c > 0.0:
        scale = 1.0 / (k * math.sqrt(p[0] ** 2 + p[1] ** 2 + p[2] ** 2))
    else:
        scale = 1.0 / (k * math.sqrt(-(p[0] ** 2 + p[1] ** 2 - p[2] ** 2)))
    p = (p[0] * scale, p[1] * scale, p[2] * scale)
    # tangent-plane Gram-Schmidt: subtract the surface-normal component
    coef = ambient_dot(space, d, p) * c
    d = (d[0] - coef * p[0], d[1] - coef * p[1], d[2] - coef * p[2])
    nd = math.sqrt(ambient_dot(space, d, d))
    return Pose(p, (d[0] / nd, d[1] / nd, d[2] / nd))


# ---------------------------------------------------------------------------
# kernel operations
# ---------------------------------------------------------------------------

def propagate(space: ModelSpace, start: Pose, kappa: float, s: float,
              tol: Tolerances = DEFAULT_TOL) -> Pose:
    """Trace length s along the constant-geodesic-curvature-kappa curve.

    Positive kappa turns left.  In the embedding chart the unit-speed curve
    satisfies x'' = kappa N - c x with N the left normal, hence
    x(s) = x0 + sn(w, s) T0 + vs(w, s) (kappa N0 - c x0),  w = kappa^2 + c,
    and T(s) = cs(w, s) T0 + sn(w, s) (kappa N0 - c x0).
    """
    if not (math.isfinite(kappa) and math.isfinite(s)) or s < 0.0:
        raise InputError(f"need finite kappa and s >= 0, got kappa={kappa}, s={s}")
    validate_pose(space, start, tol)
    c = space.c
    p, d = start.position, start.direction
    nx, ny, nz = left_normal(space, p, d)
    ux = kappa * nx - c * p[0]
    uy = kappa * ny - c * p[1]
    uz = kappa * nz - c * p[2]
    w = kappa * kappa + c
    S, C, V = sn(w, s), cs(w, s), vs(w, s)
    p1 = (p[0] + S * d[0] + V * ux,
          p[1] + S * d[1] + V * uy,
          p[2] + S * d[2] + V * uz)
    d1 = (C * d[0] + S * ux, C * d[1] + S * uy, C * d[2] + S * uz)
    return _project_pose(space, p1, d1)


def rotate(space: ModelSpace, start: Pose, angle: float,
           tol: Tolerances = DEFAULT_TOL) -> Pose:
    """Turn the direction by `angle` in the tangent plane (positive = left)."""
    if not math.isfinite(angle):
        raise InputError(f"angle must be finite, got {angle}")
    validate_pose(space, start, tol)
    d = start.direction
    n = left_normal(space, start.position, d)
    ca, sa = math.cos(angle), math.sin(angle)
    d1 = (ca * d[0] + sa * n[0], ca * d[1] + sa * n[1], ca * d[2] + sa * n[2])
    return _project_pose(space, start.position, d1)


def distance(space: ModelSpace, p: Vec3, q: Vec3, tol: Tolerances = DEFAULT_TOL) -> float:
    """Geodesic distance between two points of the model space."""
    validate_point(space, p, tol)
    validate_point(space, q, tol)
    c = space.c
    if c == 0.0:
        return math.hypot(p[0] - q[0], p[1] - q[1])
    k = space.k
    diff = (p[0] - q[0], p[1] - q[1], p[2] - q[2])
    chord2 = ambient_dot(space, diff, diff)
    # both charts give chord2 = (4/k^2) * (half-angle function of k d)^2
    if c > 0.0:
        half = 0.5 * k * math.sqrt(max(chord2, 0.0))
        return 2.0 / k * math.asin(min(1.0, half))
    half = 0.5 * k * math.sqrt(max(chord2, 0.0))
    return 2.0 / k * math.asinh(half)


def tangent_frame(space: ModelSpace, point: Vec3) -> tuple[Vec3, Vec3]:
    """Deterministic orthonormal tangent basis (e1, e2) at a point.

    e2 is the left normal of e1, so (e1, e2) is positively oriented.
    """
    if space.c == 0.0:
        e1 = (1.0, 0.0, 0.0)
        return e1, left_normal(space, point, e1)
    for seed in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)):
        coef = ambient_dot(space, seed, point) * space.c
        v = (seed[0] - coef * point[0], seed[1] - coef * point[1], seed[2] - coef * point[2])
        n2 = ambient_dot(space, v, v)
        if n2 > 1e-12:
            nv = math.sqrt(n2)
            e1 = (v[0] / nv, v[1] / nv, v[2] / nv)
            return e1, left_normal(space, point, e1)
    raise InputError(f"cannot build a tangent frame at {point}")


def pose_gap(space: ModelSpace, a: Pose, b: Pose) -> float:
    """Max of position distance and direction angle between two poses.

    Used as the closure residual; meaningful when the poses are close.
    """
    dpos = distance(space, a.position, b.position)
    e1 = a.direction
    e2 = left_normal(space, a.position, e1)
    x = ambient_dot(space, b.direction, e1)
    y = ambient_dot(space, b.direction, e2)
    dang = abs(math.atan2(y, x))
    return max(dpos, dang)
