"""Sharp reverse isoperimetric lower bounds for lambda-convex domains.

For a domain bounded by a lambda-convex curve of perimeter L in the plane of
constant curvature c, the minimal possible area is attained by the two-arc
lune and has a closed form.  All five parameter regimes (flat; spherical;
hyperbolic with lambda above, at, or below the curvature scale k) reduce to

    F_min = (2 theta - lambda L) / c          (c != 0)

where theta in (0, pi] is the lune's interior vertex angle

    theta = 2 atan(lambda * g(lambda^2 + c, L/4)),
    g(w, t) = tan(sqrt(w) t)/sqrt(w)  continued analytically through w <= 0,

with the flat case c = 0 given directly by

    F_min = L/(2 lambda) - sin(L lambda / 2) / lambda^2.

Evaluation is routed through cancellation-free forms near the degeneracies
(c -> 0 at fixed lambda, lambda -> k in the hyperbolic family, L at the
perimeter cap) so that double precision holds everywhere the validity domain
does.  Also here: the perimeter cap, the classical isoperimetric gap and the
cone upper bound used as sandwich cross-checks, and the limit-continuity
probe for the case boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InputError

CASE_EUCLIDEAN = "EUCLIDEAN"
CASE_SPHERICAL = "SPHERICAL"
CASE_HYPERBOLIC_STRONG = "HYPERBOLIC_STRONG"
CASE_HYPERBOLIC_HOROCYCLE = "HYPERBOLIC_HOROCYCLE"
CASE_HYPERBOLIC_EQUIDISTANT = "HYPERBOLIC_EQUIDISTANT"

# relative band around the cap treated as "at cap" (queries here are the
# closed curve degenerating to the full circle); strictly above is rejected
_CAP_SLOP = 1e-12

# |c| / lambda^2 below this uses the flat-expansion path for F_min
_SMALL_C_RATIO = 1e-3

# |lambda^2 - k^2| < this * k^2 evaluates the tan kernel by series (the
# hyperbolic lambda ~ k degeneracy)
_DEGENERATE_W_RATIO = 1e-6

# primary vertex-angle form switches to the complementary form when the
# tangent argument exceeds pi/2 - this
_COMPLEMENT_BAND = 1e-6


def _validate_positive(name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0.0:
        raise InputError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True)
class BoundQuery:
    """Inputs of the reverse bound: curvature c, convexity level, perimeter."""

    c: float
    lam: float
    L: float

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise InputError(f"curvature must be finite, got {self.c}")
        _validate_positive("lambda", self.lam)
        _validate_positive("L", self.L)


@dataclass(frozen=True)
class BoundResult:
    """Minimal area with its case tag, cap, and cap-endpoint flag."""

    F_min: float
    case: str
    cap: float
    at_cap: bool = False

    def to_json(self) -> dict:
        return {
            "F_min": self.F_min,
            "case": self.case,
            "cap": self.cap if math.isfinite(self.cap) else "inf",
            "at_cap": self.at_cap,
        }


def case_tag(c: float, lam: float) -> str:
    """Which of the five regimes (c, lambda) falls in."""
    if c == 0.0:
        return CASE_EUCLIDEAN
    if c > 0.0:
        return CASE_SPHERICAL
    w = lam * lam + c
    if w > 0.0:
        return CASE_HYPERBOLIC_STRONG
    if w == 0.0:
        return CASE_HYPERBOLIC_HOROCYCLE
    return CASE_HYPERBOLIC_EQUIDISTANT


def perimeter_cap(c: float, lam: float) -> float:
    """Largest perimeter a lambda-convex curve can have: 2 pi / sqrt(lam^2+c).

    Infinite in the hyperbolic regimes with lambda <= k (horocycles and
    equidistants close at any length).
    """
    _validate_positive("lambda", lam)
    if not math.isfinite(c):
        raise InputError(f"curvature must be finite, got {c}")
    w = lam * lam + c
    if w > 0.0:
        return 2.0 * math.pi / math.sqrt(w)
    return math.inf


def _tan_kernel(w: float, t: float) -> float:
    """g(w, t) = tan(sqrt(w) t)/sqrt(w), analytic through w = 0.

    Series in w t^2 near zero avoids the 0/0 at w = 0; elsewhere the direct
    trig/hyperbolic form is well conditioned.
    """
    y = w * t * t
    if w == 0.0 or abs(y) < 1e-3:
        return t * (1.0 + y / 3.0 + 2.0 * y * y / 15.0
                    + 17.0 * y**3 / 315.0 + 62.0 * y**4 / 2835.0)
    if w > 0.0:
        r = math.sqrt(w)
        return math.tan(r * t) / r
    r = math.sqrt(-w)
    return math.tanh(r * t) / r


def vertex_angle(c: float, lam: float, L: float) -> float:
    """Interior vertex angle theta of the extremal lune, in (0, pi].

    theta = 2 atan(lam * g(lam^2 + c, L/4)).  Near the cap (tan argument
    close to pi/2) the complementary form pi - 2 atan((omega/lam) tan(m))
    with m = pi/2 - omega L / 4 keeps full precision.
    """
    _validate_positive("lambda", lam)
    _validate_positive("L", L)
    w = lam * lam + c
    t = 0.25 * L
    degenerate = c < 0.0 and abs(w) < _DEGENERATE_W_RATIO * (-c)
    if degenerate or w == 0.0:
        return 2.0 * math.atan(lam * _tan_kernel(w, t))
    if w > 0.0:
        omega = math.sqrt(w)
        x = omega * t
        if x > 0.5 * math.pi * (1.0 + _CAP_SLOP):
            raise DomainError(
                f"L={L} exceeds the perimeter cap {2.0 * math.pi / omega:.6f}")
        if x >= 0.5 * math.pi:
            return math.pi
        if x <= 0.5 * math.pi - _COMPLEMENT_BAND:
            return 2.0 * math.atan2(lam * math.tan(x), omega)
        m = 0.5 * math.pi - x
        return math.pi - 2.0 * math.atan2(omega * math.tan(m), lam)
    v = math.sqrt(-w)
    return 2.0 * math.atan2(lam * math.tanh(v * t), v)


def _flat_bound(lam: float, L: float) -> float:
    """F_min for c = 0: (x - sin x)/lam^2 with x = lam L / 2."""
    x = 0.5 * lam * L
    if x < 0.1:
        x2 = x * x
        xm = x * x2 * (1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0
                       - x2**3 / 362880.0 + x2**4 / 39916800.0)
    else:
        xm = x - math.sin(x)
    return xm / (lam * lam)


def _tan_minus_arg(x: float) -> float:
    """tan x - x without cancellation for small x."""
    if x < 0.1:
        x2 = x * x
        return x * x2 * (1.0 / 3.0 + 2.0 * x2 / 15.0 + 17.0 * x2 * x2 / 315.0
                         + 62.0 * x2**3 / 2835.0 + 1382.0 * x2**4 / 155925.0
                         + 21844.0 * x2**5 / 6081075.0)
    return math.tan(x) - x


def _near_flat_bound(c: float, lam: float, L: float) -> float:
    """F_min for 0 < |c| << lam^2, exact through the c -> 0 degeneracy.

    Writes F = 4 (atan(u(c)) - atan(u(0)))/c with u = lam g(lam^2 + c, L/4)
    and evaluates the difference quotient through the tangent addition
    formula, so no term divides a cancellation by c.  Requires
    lam L / 4 bounded away from pi/2 (the caller routes near-cap queries to
    the direct form).
    """
    t = 0.25 * L
    th = lam * t
    tau = math.tan(th)
    r = c / (lam * lam)
    sq = math.sqrt(1.0 + r)
    h = r / (sq + 1.0)                    # sqrt(1 + r) - 1, stable
    delta = th * h
    tand = math.tan(delta)
    m_term = th * tau * tau - _tan_minus_arg(th)   # theta (1+tau^2) - tau
    tdc_over_h = (th**3 * h * h / 3.0 + 2.0 * th**5 * h**4 / 15.0)  # (tan d - d)/h
    n_over_h = m_term + th * tau * tau * h + tdc_over_h * (1.0 + tau * tau * (1.0 + h))
    h_over_c = 1.0 / (lam * lam * (sq + 1.0))
    delta_over_c = n_over_h * h_over_c / ((1.0 - tau * tand) * (1.0 + h))
    big_delta = c * delta_over_c          # u(c) - u(0)
    u = tau + big_delta
    y = big_delta / (1.0 + u * tau)
    atan_ratio = math.atan(y) / y if y != 0.0 else 1.0
    return 4.0 * delta_over_c / (1.0 + u * tau) * atan_ratio


def reverse_bound(query: BoundQuery) -> BoundResult:
    """Minimal area of a lambda-convex domain with perimeter L in curvature c.

    Queries with L above the cap raise DomainError naming the cap; L within
    rounding of the cap is evaluated at the cap endpoint (smooth circle)
    and flagged.
    """
    c, lam, L = query.c, query.lam, query.L
    cap = perimeter_cap(c, lam)
    if L > cap * (1.0 + _CAP_SLOP):
        raise DomainError(f"L={L} exceeds the perimeter cap {cap:.6f} "
                          f"for c={c}, lambda={lam}")
    at_cap = math.isfinite(cap) and L >= cap * (1.0 - _CAP_SLOP)
    tag = case_tag(c, lam)
    if at_cap:
        # limit of the general form as theta -> pi; exact at every c
        omega = math.sqrt(lam * lam + c)
        f_min = 2.0 * math.pi / (omega * (omega + lam))
    elif c == 0.0:
        f_min = _flat_bound(lam, L)
    elif abs(c) <= _SMALL_C_RATIO * lam * lam and lam * L <= 4.8:
        f_min = _near_flat_bound(c, lam, L)
    else:
        theta = vertex_angle(c, lam, L)
        f_min = (2.0 * theta - lam * L) / c
    return BoundResult(f_min, tag, cap, at_cap)


def bound(c: float, lam: float, L: float) -> BoundResult:
    """Convenience wrapper: reverse_bound(BoundQuery(c, lam, L))."""
    return reverse_bound(BoundQuery(c, lam, L))


def classical_isoperimetric_gap(c: float, L: float, F: float) -> float:
    """L^2 - 4 pi F + c F^2; nonnegative for every embedded domain."""
    _validate_positive("L", L)
    _validate_positive("F", F)
    return L * L - 4.0 * math.pi * F + c * F * F


def alexandrov_upper_bound(c: float, F_candidate: float, L: float) -> float:
    """Cone comparison upper bound L^2 / (2 (2 pi - omega+)).

    For smooth constant-curvature interiors the positive curvature part is
    omega+ = max(c, 0) * F_candidate; it must stay below 2 pi.
    """
    _validate_positive("L", L)
    if not math.isfinite(F_candidate) or F_candidate < 0.0:
        raise InputError(f"candidate area must be nonnegative, got {F_candidate}")
    omega_plus = max(c, 0.0) * F_candidate
    if omega_plus >= 2.0 * math.pi:
        raise DomainError(f"positive curvature part {omega_plus} reaches 2 pi")
    return L * L / (2.0 * (2.0 * math.pi - omega_plus))


@dataclass(frozen=True)
class ContinuityReport:
    """Case-boundary deviations for a ladder of curvature offsets.

    For each eps: deviation of the spherical (c = +eps^2) and strong
    hyperbolic (c = -eps^2) bounds from the flat bound, and the symmetric
    lambda -> k deviation |(F(k+eps) + F(k-eps))/2 - F(k)| against the
    horocycle bound at k = lambda.  All are O(eps^2): halving eps should
    quarter every deviation.
    """

    lam: float
    L: float
    eps_values: tuple[float, ...]
    flat_value: float
    horocycle_value: float
    spherical_dev: tuple[float, ...]
    hyperbolic_dev: tuple[float, ...]
    lambda_dev: tuple[float, ...]

    @staticmethod
    def ratios(devs: tuple[float, ...]) -> list[float]:
        return [b / a for a, b in zip(devs, devs[1:])]


def limit_continuity_check(lam: float, L: float,
                           eps_values: tuple[float, ...] = (1e-4, 5e-5, 2.5e-5),
                           ) -> ContinuityReport:
    """Probe continuity of the bound across c -> 0 and lambda -> k."""
    _validate_positive("lambda", lam)
    _validate_positive("L", L)
    if not eps_values:
        raise InputError("need at least one eps value")
    eps_max = max(eps_values)
    if eps_max >= lam:
        raise InputError(f"eps ladder must stay below lambda, got {eps_max} >= {lam}")
    if L > perimeter_cap(eps_max * eps_max, lam):
        raise DomainError(f"L={L} leaves the spherical cap at k={eps_max}")
    flat = bound(0.0, lam, L).F_min
    horo = bound(-lam * lam, lam, L).F_min
    dev_s, dev_h, dev_l = [], [], []
    for eps in eps_values:
        c_eps = eps * eps
        dev_s.append(abs(bound(c_eps, lam, L).F_min - flat))
        dev_h.append(abs(bound(-c_eps, lam, L).F_min - flat))
        hi = bound(-lam * lam, lam + eps, L).F_min
        lo = bound(-lam * lam, lam - eps, L).F_min
        dev_l.append(abs(0.5 * (hi + lo) - horo))
    return ContinuityReport(lam, L, tuple(eps_values), flat, horo,
                            tuple(dev_s), tuple(dev_h), tuple(dev_l))
