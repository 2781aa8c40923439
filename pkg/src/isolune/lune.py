"""Construction and certification of the extremal two-arc lune.

The minimal-area lambda-convex domain of perimeter L consists of two arcs of
geodesic curvature exactly lambda and length L/2 meeting at two corners with
equal interior angle theta.  Gauss-Bonnet fixes the angle:

    c F_min + lambda L + 2 (pi - theta) = 2 pi   =>   theta = (lambda L + c F_min) / 2.

The curve is laid out from the canonical origin pose, so closure is a
theorem; the residual reported by the curve constructor is purely a
floating-point check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import bound
from .curves import (
    Arc,
    ClosedCurve,
    area,
    gauss_bonnet_residual,
    is_lambda_convex,
    length,
)
from .errors import CertificationError
from .modelspace import ModelSpace

_GAP_TOL = 1e-8       # relative equality gap allowed in certification
_GB_TOL = 1e-8        # absolute Gauss-Bonnet residual allowed


@dataclass(frozen=True)
class LuneSpec:
    """Derived data of the extremal lune for (c, lambda, L)."""

    c: float
    lam: float
    L: float
    F_min: float
    theta: float          # interior vertex angle, in (0, pi]
    at_cap: bool

    @classmethod
    def solve(cls, c: float, lam: float, L: float) -> "LuneSpec":
        res = bound(c, lam, L)
        theta = 0.5 * (lam * L + c * res.F_min)
        if res.at_cap:
            theta = math.pi
        return cls(c, lam, L, res.F_min, theta, res.at_cap)


def build_lune(c: float, lam: float, L: float) -> ClosedCurve:
    """The extremal lune as an explicit closed curve.

    Two arcs (kappa = lambda, s = L/2) and two equal corner turns
    pi - theta.  Raises DomainError when L exceeds the perimeter cap.
    """
    spec = LuneSpec.solve(c, lam, L)
    turn = max(0.0, math.pi - spec.theta)
    space = ModelSpace(c)
    half = Arc(lam, 0.5 * L)
    return ClosedCurve(space, space.origin_pose(), (half, half), (turn, turn))


@dataclass(frozen=True)
class CertificationReport:
    """Equality-case certificate for a lune curve."""

    c: float
    lam: float
    length: float
    area: float
    F_min: float
    relative_gap: float
    lambda_convex: bool
    gauss_bonnet_residual: float
    case: str
    at_cap: bool

    def to_json(self) -> dict:
        return {
            "c": self.c,
            "lambda": self.lam,
            "length": self.length,
            "area": self.area,
            "F_min": self.F_min,
            "relative_gap": self.relative_gap,
            "lambda_convex": self.lambda_convex,
            "gauss_bonnet_residual": self.gauss_bonnet_residual,
            "case": self.case,
            "at_cap": self.at_cap,
        }


def certify_equality(curve: ClosedCurve, lam: float) -> CertificationReport:
    """Check that a lune attains the reverse isoperimetric bound exactly.

    Measures length and quadrature area, compares the area against the
    closed-form minimum, and verifies lambda-convexity and the Gauss-Bonnet
    residual.  Raises CertificationError listing every violated check.
    """
    c = curve.space.c
    L = length(curve)
    F = area(curve)
    res = bound(c, lam, L)
    gap = abs(F - res.F_min) / abs(res.F_min)
    convex, _ = is_lambda_convex(curve, lam)
    residual = gauss_bonnet_residual(curve, area_value=F)
    report = CertificationReport(c, lam, L, F, res.F_min, gap, convex,
                                 residual, res.case, res.at_cap)
    failures = []
    if gap > _GAP_TOL:
        failures.append(f"equality gap {gap:.3e} above {_GAP_TOL}")
    if not convex:
        failures.append("curve is not lambda-convex")
    if abs(residual) > _GB_TOL:
        failures.append(f"Gauss-Bonnet residual {residual:.3e} above {_GB_TOL}")
    if failures:
        raise CertificationError("; ".join(failures))
    return report
