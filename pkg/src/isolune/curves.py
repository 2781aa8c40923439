"""Closed convex curves built from constant-geodesic-curvature arcs.

A curve is a cyclic list of arcs (kappa_i, s_i) with a nonnegative corner
turn after each arc.  Length, total turning, sub-arc turning, the
lambda-convexity test, and the enclosed area live here.

Area is computed two ways and cross-checked: a Green's-theorem line
integral, and (for c != 0) the Gauss-Bonnet identity c F + turning = 2 pi.
The line integral uses geodesic polar coordinates (rho, phi) around an
interior anchor point q, where the area form of the curvature-c metric is
sn(c, rho) drho ^ dphi = d(vs(c, rho) dphi); the corresponding potential
vs(c, rho) dphi is smooth on the whole domain (its only singularity is the
antipode of q, which a convex domain cannot contain).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, InputError
from .modelspace import (
    DEFAULT_TOL,
    ModelSpace,
    Pose,
    Tolerances,
    ambient_dot,
    cs_arr,
    left_normal,
    pose_gap,
    propagate,
    rotate,
    sn_arr,
    tangent_frame,
    validate_pose,
    vs_arr,
)

_MIN_ARC_LENGTH = 1e-12

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


@dataclass(frozen=True)
class Arc:
    """One constant-geodesic-curvature piece: curvature kappa, length s."""

    kappa: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and math.isfinite(self.s)):
            raise InputError(f"arc parameters must be finite: {self}")
        if self.s <= _MIN_ARC_LENGTH:
            raise InputError(f"degenerate arc length {self.s}")


@dataclass(frozen=True)
class SubArc:
    """A connected piece of the boundary: start (arc index, offset), extent."""

    arc_index: int
    offset: float
    extent: float


@dataclass(frozen=True)
class ClosedCurve:
    """Closed convex piecewise constant-curvature curve.

    turns[i] is the corner turn applied after arcs[i]; all turns must be
    nonnegative (convexity) and below pi (no cusps).  Construction verifies
    that composing propagate/rotate over all pieces returns to the start
    pose within the closure tolerance.
    """

    space: ModelSpace
    start: Pose
    arcs: tuple[Arc, ...]
    turns: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "turns", tuple(float(t) for t in self.turns))
        if not self.arcs:
            raise InputError("curve needs at least one arc")
        if len(self.turns) != len(self.arcs):
            raise InputError(
                f"{len(self.arcs)} arcs need {len(self.arcs)} turns, got {len(self.turns)}")
        for t in self.turns:
            if not math.isfinite(t) or t < 0.0 or t >= math.pi:
                raise InputError(f"corner turn {t} outside [0, pi)")
        validate_pose(self.space, self.start)
        gap = pose_gap(self.space, self.start, _walk(self)[1])
        if gap > DEFAULT_TOL.closure:
            raise InputError(f"curve does not close: residual {gap:.3e}")

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)


def _walk(curve: ClosedCurve) -> tuple[list[Pose], Pose]:
    """Poses at the start of each arc, plus the final pose after the loop."""
    poses = [curve.start]
    pose = curve.start
    for arc, turn in zip(curve.arcs, curve.turns):
        pose = propagate(curve.space, pose, arc.kappa, arc.s)
        if turn != 0.0:
            pose = rotate(curve.space, pose, turn)
        poses.append(pose)
    return poses[:-1], poses[-1]


def arc_start_poses(curve: ClosedCurve) -> list[Pose]:
    """Pose at the beginning of each arc, in order."""
    return _walk(curve)[0]


def length(curve: ClosedCurve) -> float:
    """Perimeter: sum of the arc lengths."""
    return sum(a.s for a in curve.arcs)


def total_turning(curve: ClosedCurve) -> float:
    """Integral geodesic curvature of the whole boundary, corners included."""
    return sum(a.kappa * a.s for a in curve.arcs) + sum(curve.turns)


def turning(curve: ClosedCurve, part: SubArc) -> float:
    """Integral geodesic curvature of a sub-arc.

    Smooth pieces contribute kappa * length; corner turns count only when
    the junction lies strictly inside the sub-arc.  Endpoints within 1e-12
    of a junction are snapped to it.
    """
    total = length(curve)
    if not (0 <= part.arc_index < curve.n_arcs):
        raise InputError(f"arc index {part.arc_index} out of range")
    if not (0.0 <= part.offset < curve.arcs[part.arc_index].s):
        raise InputError(f"offset {part.offset} outside the start arc")
    if not (part.extent > 0.0):
        raise InputError(f"sub-arc extent must be positive, got {part.extent}")
    if part.extent > total * (1.0 + 1e-12):
        raise InputError(f"extent {part.extent} exceeds the curve length {total}")
    snap = 1e-12 * total
    i = part.arc_index
    remaining = part.extent
    seg = min(remaining, curve.arcs[i].s - part.offset)
    phi = curve.arcs[i].kappa * seg
    remaining -= seg
    while remaining > snap:
        phi += curve.turns[i]
        i = (i + 1) % curve.n_arcs
        seg = min(remaining, curve.arcs[i].s)
        phi += curve.arcs[i].kappa * seg
        remaining -= seg
    return phi


def is_lambda_convex(curve: ClosedCurve, lam: float) -> tuple[bool, SubArc | None]:
    """Check that every sub-arc has turning / length >= lam.

    For piecewise constant-curvature curves with nonnegative corner turns the
    infimum of that ratio over sub-arcs equals min_i kappa_i, so the check
    reduces to per-arc curvature and per-corner sign tests.  On failure the
    witness is a concrete violating sub-arc.
    """
    if not (lam > 0.0) or not math.isfinite(lam):
        raise InputError(f"lambda must be positive and finite, got {lam}")
    for i, arc in enumerate(curve.arcs):
        if arc.kappa < lam:
            return False, SubArc(i, 0.0, arc.s)
    for i, t in enumerate(curve.turns):
        if t < 0.0:  # unreachable for validated curves; kept for the lemma
            j = (i + 1) % curve.n_arcs
            d = 0.1 * min(curve.arcs[i].s, curve.arcs[j].s)
            return False, SubArc(i, curve.arcs[i].s - d, 2.0 * d)
    return True, None


# ---------------------------------------------------------------------------
# area quadrature
# ---------------------------------------------------------------------------

def interior_anchor(curve: ClosedCurve) -> tuple[float, float, float]:
    """A point inside the enclosed domain (chart mean of boundary samples).

    The chart mean of boundary points lies in the convex cone over the
    domain, so its projection back to the surface is interior.
    """
    space = curve.space
    pts = []
    for pose, arc in zip(arc_start_poses(curve), curve.arcs):
        pts.append(pose.position)
        pts.append(propagate(space, pose, arc.kappa, 0.5 * arc.s).position)
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    mz = sum(p[2] for p in pts) / len(pts)
    c = space.c
    if c == 0.0:
        return (mx, my, 0.0)
    m2 = ambient_dot(space, (mx, my, mz), (mx, my, mz))
    if c > 0.0:
        nm = math.sqrt(m2)
    else:
        nm = math.sqrt(-m2)
    if not (nm * space.k > 1e-9):
        raise ConsistencyError("degenerate boundary mean; cannot anchor the quadrature")
    scale = 1.0 / (space.k * nm)
    return (mx * scale, my * scale, mz * scale)


def _dots(space: ModelSpace, pts: np.ndarray, v) -> np.ndarray:
    if space.c < 0.0:
        return pts[:, 0] * v[0] + pts[:, 1] * v[1] - pts[:, 2] * v[2]
    return pts[:, 0] * v[0] + pts[:, 1] * v[1] + pts[:, 2] * v[2]


def _arc_samples(space: ModelSpace, pose: Pose, kappa: float,
                 svals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Positions and unit tangents at arclengths svals along one arc."""
    c = space.c
    p = np.array(pose.position)
    d = np.array(pose.direction)
    n = np.array(left_normal(space, pose.position, pose.direction))
    u = kappa * n - c * p
    w = kappa * kappa + c
    S = sn_arr(w, svals)[:, None]
    C = cs_arr(w, svals)[:, None]
    V = vs_arr(w, svals)[:, None]
    X = p[None, :] + S * d[None, :] + V * u[None, :]
    T = C * d[None, :] + S * u[None, :]
    return X, T


def _arc_integrand(curve: ClosedCurve, pose: Pose, kappa: float,
                   anchor, e1, e2):
    """Green's-theorem integrand vs(c, rho) dphi/ds along one arc."""
    space = curve.space
    c = space.c
    k = space.k

    def f(svals: np.ndarray) -> np.ndarray:
        X, T = _arc_samples(space, pose, kappa, svals)
        if c == 0.0:
            a1 = X[:, 0] - anchor[0]
            a2 = X[:, 1] - anchor[1]
            return 0.5 * (a1 * T[:, 1] - a2 * T[:, 0])
        a1 = _dots(space, X, e1)
        a2 = _dots(space, X, e2)
        da1 = _dots(space, T, e1)
        da2 = _dots(space, T, e2)
        m = a1 * a1 + a2 * a2
        wind = a1 * da2 - a2 * da1
        if c > 0.0:
            krho = np.arctan2(k * np.sqrt(m), c * _dots(space, X, anchor))
            v = 2.0 * np.sin(0.5 * krho) ** 2 / c
        else:
            krho = np.arcsinh(k * np.sqrt(m))
            v = 2.0 * np.sinh(0.5 * krho) ** 2 / (-c)
        return v * wind / m

    return f


def _gl_panel(f, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    rad = 0.5 * (b - a)
    return rad * float(_GL_WEIGHTS @ f(mid + rad * _GL_NODES))


def _adaptive_gl(f, a: float, b: float, tol_abs: float) -> float:
    """Adaptive Gauss-Legendre: split panels until whole vs halves agree."""

    def rec(a: float, b: float, whole: float, tol: float, depth: int) -> float:
        mid = 0.5 * (a + b)
        lo = _gl_panel(f, a, mid)
        hi = _gl_panel(f, mid, b)
        if abs(lo + hi - whole) <= tol:
            return lo + hi
        if depth >= 24:
            raise ConsistencyError("area quadrature failed to converge")
        return rec(a, mid, lo, 0.5 * tol, depth + 1) + rec(mid, b, hi, 0.5 * tol, depth + 1)

    return rec(a, b, _gl_panel(f, a, b), tol_abs, 0)


def area(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL) -> float:
    """Enclosed area of the disc-type domain bounded by the curve.

    Returns the Green's-theorem quadrature value.  For c != 0 the
    Gauss-Bonnet value (2 pi - turning)/c must agree within
    tol.area_agreement relative (plus a small rounding floor) or a
    ConsistencyError is raised.  The curve must be positively oriented
    (interior on the left), which the convexity invariant guarantees.
    """
    space = curve.space
    anchor = interior_anchor(curve)
    if space.c == 0.0:
        e1 = e2 = None
    else:
        e1, e2 = tangent_frame(space, anchor)
    total = 0.0
    for pose, arc in zip(arc_start_poses(curve), curve.arcs):
        f = _arc_integrand(curve, pose, arc.kappa, anchor, e1, e2)
        total += _adaptive_gl(f, 0.0, arc.s, tol.quad_abs)
    if space.c != 0.0:
        gb = (2.0 * math.pi - total_turning(curve)) / space.c
        allowance = tol.area_agreement * abs(total) + 1e-13 * (1.0 + 1.0 / abs(space.c))
        if abs(total - gb) > allowance:
            raise ConsistencyError(
                f"area methods disagree: quadrature {total!r}, Gauss-Bonnet {gb!r}")
    return total


def gauss_bonnet_residual(curve: ClosedCurve, area_value: float | None = None) -> float:
    """c * area + total turning - 2 pi (zero for valid convex curves)."""
    if area_value is None:
        area_value = area(curve)
    return curve.space.c * area_value + total_turning(curve) - 2.0 * math.pi


# ---------------------------------------------------------------------------
# sampling and charts (used by tests and the verification harness)
# ---------------------------------------------------------------------------

def sample_positions(curve: ClosedCurve, per_arc: int = 512) -> np.ndarray:
    """Boundary points, per_arc per arc, ordered along the curve."""
    chunks = []
    for pose, arc in zip(arc_start_poses(curve), curve.arcs):
        svals = np.linspace(0.0, arc.s, per_arc, endpoint=False)
        X, _ = _arc_samples(curve.space, pose, arc.kappa, svals)
        chunks.append(X)
    return np.vstack(chunks)


def planar_chart(curve: ClosedCurve, pts: np.ndarray) -> np.ndarray:
    """Azimuthal-equidistant chart around the interior anchor.

    Injective on the whole surface minus the anchor's antipode, so it
    preserves simplicity of boundary polylines.
    """
    space = curve.space
    anchor = interior_anchor(curve)
    if space.c == 0.0:
        return np.column_stack([pts[:, 0] - anchor[0], pts[:, 1] - anchor[1]])
    e1, e2 = tangent_frame(space, anchor)
    a1 = _dots(space, pts, e1)
    a2 = _dots(space, pts, e2)
    m = np.sqrt(a1 * a1 + a2 * a2)
    k = space.k
    if space.c > 0.0:
        rho = np.arctan2(k * m, space.c * _dots(space, pts, anchor)) / k
    else:
        rho = np.arcsinh(k * m) / k
    scale = np.where(m > 0.0, rho / np.maximum(m, 1e-300), 0.0)
    return np.column_stack([scale * a1, scale * a2])


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def curve_to_json(curve: ClosedCurve) -> dict:
    """JSON-ready dict; floats survive a round trip exactly."""
    return {
        "c": curve.space.c,
        "start": {
            "position": list(curve.start.position),
            "direction": list(curve.start.direction),
        },
        "arcs": [{"kappa": a.kappa, "s": a.s} for a in curve.arcs],
        "turns": list(curve.turns),
    }


def curve_from_json(obj) -> ClosedCurve:
    """Inverse of curve_to_json; accepts a dict or a JSON string."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        space = ModelSpace(float(obj["c"]))
        start = Pose(tuple(float(v) for v in obj["start"]["position"]),
                     tuple(float(v) for v in obj["start"]["direction"]))
        arcs = tuple(Arc(float(a["kappa"]), float(a["s"])) for a in obj["arcs"])
        turns = tuple(float(t) for t in obj["turns"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed curve JSON: {exc}") from exc
    return ClosedCurve(space, start, arcs, turns)
