"""Pointwise pinching estimates for unit-Einstein normal-form data.

Everything here lives at a single point: the input is normal-form data
(a1 <= a2 <= a3 with mixed parts b summing to zero, a summing to the Einstein
constant) and the outputs are the closed-form bounds that drive the sphere /
projective-plane / product classification, together with brute-force grid
oracles that never consult the closed forms they are checking.

Closed forms accept floats (float out) or exact rationals / quadratic surds
(exact out, when the inner square root denests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ExactnessError
from .surd import QuadraticSurd

SQRT6 = math.sqrt(6.0)

_EXACT_TYPES = (int, Fraction, QuadraticSurd)


def _is_exact(*xs) -> bool:
    return all(isinstance(x, _EXACT_TYPES) for x in xs)


def _exact(x):
    return x if isinstance(x, QuadraticSurd) else QuadraticSurd.from_rational(x)


@dataclass(frozen=True)
class GridReport:
    """Outcome of one brute-force oracle run against a closed-form bound.

    extremum  -- best value found on the grid (max or min per `sense`)
    argument  -- grid point achieving it (ties: first in scan order)
    resolution-- grid subdivisions per axis (or sample count for samplers)
    bound     -- the closed-form value under test
    violation -- how far the grid beat the bound (0 when the bound holds)
    sense     -- "max": extremum must stay <= bound; "min": >= bound
    feasible  -- False when the constraint set contained no grid point
    """

    extremum: float
    argument: tuple
    resolution: int
    bound: float
    violation: float
    sense: str = "max"
    feasible: bool = True

    @property
    def gap(self) -> float:
        """Nonnegative slack between bound and extremum (sharpness measure)."""
        if not self.feasible:
            return math.inf
        if self.sense == "max":
            return self.bound - self.extremum
        return self.extremum - self.bound


def _report(extremum, argument, resolution, bound, sense) -> GridReport:
    if sense == "max":
        violation = max(0.0, extremum - bound)
    else:
        violation = max(0.0, bound - extremum)
    return GridReport(extremum, argument, resolution, bound, violation, sense)


def _infeasible(resolution, bound, sense) -> GridReport:
    return GridReport(math.nan, (), resolution, bound, 0.0, sense, feasible=False)


# -- the pointwise quadratic inequality ----------------------------------------


def hamilton_gap(d):
    """Slack a1 - (a1^2 + b1^2 + 2 a2 a3 + 2 b2 b3) of the normal-form inequality.

    Nonnegative on curvature data of smooth Einstein four-manifolds; vanishes
    identically on the three symmetric model geometries.  Exact inputs give
    exact output.
    """
    a1, a2, a3 = d.a
    b1, b2, b3 = d.b
    return a1 - (a1 * a1 + b1 * b1 + 2 * (a2 * a3 + b2 * b3))


HAMILTON_PREDICATE_TOL = 1e-12


def hamilton_holds(d) -> bool:
    """The inequality itself, with boundary slack 1e-12 for float data."""
    return float(hamilton_gap(d)) >= -HAMILTON_PREDICATE_TOL


# -- Weyl bounds from a two-sided sectional pinch (sum/difference form) ---------


def lemma_k3k1_bounds(alpha, delta):
    """Bounds on |W+| + |W-| and |W+|^2 + |W-|^2 given a2 + a3 and a3 - a2.

    With alpha = a2 + a3 > 0 and delta = 2(a3 - a2) >= 0 the Weyl halves of a
    unit-Einstein operator satisfy

        |W+| + |W-|     <=  (6 alpha - 4 + delta) / sqrt6
        |W+|^2 + |W-|^2 <=  (12 alpha^2 - 16 alpha + 16/3 + delta^2) / 2

    Returns (sum_bound, normsq_bound); exact inputs give exact output (the sum
    bound then lives in Q(sqrt6)).
    """
    if not float(alpha) > 0:
        raise DomainError("alpha = a2 + a3 must be positive")
    if float(delta) < 0:
        raise DomainError("delta = 2(a3 - a2) must be nonnegative")
    if _is_exact(alpha, delta):
        alpha = Fraction(alpha) if not isinstance(alpha, QuadraticSurd) else alpha
        delta = Fraction(delta) if not isinstance(delta, QuadraticSurd) else delta
        inv_sqrt6 = QuadraticSurd(0, 1, 6, 6)  # 1/sqrt6 = sqrt6/6
        sum_bound = (_exact(6 * alpha - 4 + delta)) * inv_sqrt6
        normsq_bound = (12 * alpha * alpha - 16 * alpha + Fraction(16, 3) + delta * delta) / 2
        return sum_bound, normsq_bound
    a, dl = float(alpha), float(delta)
    return (6.0 * a - 4.0 + dl) / SQRT6, (12.0 * a * a - 16.0 * a + 16.0 / 3.0 + dl * dl) / 2.0


def lemma_k3k1_oracle(
    alpha: float, delta: float, resolution: int = 400, quantity: str = "sum"
) -> GridReport:
    """Brute-force check of the pinched-Weyl bounds.

    The trace-free halves are parametrized by p = l2 + l3, q = l3 - l2 (and
    m, n for the other half) subject to p + m = 2 alpha - 4/3, q + n = delta,
    0 <= q <= 3p, 0 <= n <= 3m; then |W+| = sqrt(3p^2 + q^2)/sqrt2.  The grid
    maximizes |W+| + |W-| (quantity="sum") or the squared sum ("normsq") and
    reports the slack against the closed form.  An empty parameter polytope
    (delta > 6 alpha - 4) is reported infeasible rather than an error.
    """
    if quantity not in ("sum", "normsq"):
        raise DomainError("quantity must be 'sum' or 'normsq'")
    sum_bound, normsq_bound = lemma_k3k1_bounds(alpha, delta)
    bound = float(sum_bound if quantity == "sum" else normsq_bound)
    alpha, delta = float(alpha), float(delta)
    alpha1 = 2.0 * alpha - 4.0 / 3.0
    if alpha1 < 0.0:
        return _infeasible(resolution, bound, "max")

    p = np.linspace(0.0, alpha1, resolution + 1)
    qlo = np.maximum(0.0, delta - 3.0 * (alpha1 - p))
    qhi = np.minimum(delta, 3.0 * p)
    ok = qlo <= qhi
    if not np.any(ok):
        return _infeasible(resolution, bound, "max")
    p, qlo, qhi = p[ok], qlo[ok], qhi[ok]
    t = np.linspace(0.0, 1.0, resolution + 1)
    q = qlo[:, None] + t[None, :] * (qhi - qlo)[:, None]
    pp = np.broadcast_to(p[:, None], q.shape)
    m = alpha1 - pp
    n = delta - q
    wp = np.sqrt(3.0 * pp * pp + q * q) / math.sqrt(2.0)
    wm = np.sqrt(3.0 * m * m + n * n) / math.sqrt(2.0)
    vals = wp + wm if quantity == "sum" else wp * wp + wm * wm
    flat = int(np.argmax(vals))
    i, j = np.unravel_index(flat, vals.shape)
    return _report(float(vals[i, j]), (float(pp[i, j]), float(q[i, j])), resolution, bound, "max")


# -- the two-variable quadratic minimum -----------------------------------------


def lemma_algebraic2_min(a, b):
    """Minimum of 4xy + x^2 + y^2 over {xy <= 0, |2x+y| <= a, |x-y| <= b}.

    Two branches: (2a^2 - 2ab - b^2)/3 when 2a < b, else -b^2/2.  Requires
    a, b >= 0.  Exact inputs give exact output.
    """
    if float(a) < 0 or float(b) < 0:
        raise DomainError("bounds a, b must be nonnegative")
    if _is_exact(a, b):
        if not isinstance(a, QuadraticSurd):
            a = Fraction(a)
        if not isinstance(b, QuadraticSurd):
            b = Fraction(b)
        if 2 * a < b:
            return (2 * a * a - 2 * a * b - b * b) / 3
        return -(b * b) / 2
    a, b = float(a), float(b)
    if 2.0 * a < b:
        return (2.0 * a * a - 2.0 * a * b - b * b) / 3.0
    return -b * b / 2.0


def lemma_algebraic2_oracle(
    a: float, b: float, resolution: int = 400, refinements: int = 2
) -> GridReport:
    """Grid minimum of 4xy + x^2 + y^2 over the constrained parallelogram.

    The (x, y) grid is sheared along the constraint coordinates m = 2x + y,
    n = x - y so the active boundary |x - y| = b lies exactly on grid lines;
    a couple of refinement passes around the incumbent bring the discretization
    error well under 1e-6.
    """
    a, b = float(a), float(b)
    bound = float(lemma_algebraic2_min(a, b))
    eps = 1e-12 * max(1.0, a * a, b * b)  # grid rounding can push xy just past 0

    def scan(mlo, mhi, nlo, nhi):
        m = np.linspace(mlo, mhi, resolution + 1)
        n = np.linspace(nlo, nhi, resolution + 1)
        mm, nn = np.meshgrid(m, n, indexing="ij")
        x = (mm + nn) / 3.0
        y = (mm - 2.0 * nn) / 3.0
        vals = 4.0 * x * y + x * x + y * y
        vals = np.where(x * y <= eps, vals, np.inf)
        flat = int(np.argmin(vals))
        i, j = np.unravel_index(flat, vals.shape)
        return float(vals[i, j]), float(mm[i, j]), float(nn[i, j])

    best, mstar, nstar = scan(-a, a, -b, b)
    if not math.isfinite(best):
        best, mstar, nstar = 0.0, 0.0, 0.0  # origin is always admissible
    cell_m, cell_n = 2.0 * a / resolution, 2.0 * b / resolution
    for _ in range(refinements):
        half_m, half_n = 3.0 * cell_m, 3.0 * cell_n
        window = scan(
            max(-a, mstar - half_m), min(a, mstar + half_m),
            max(-b, nstar - half_n), min(b, nstar + half_n),
        )
        if window[0] < best:
            best, mstar, nstar = window
        cell_m, cell_n = 2.0 * half_m / resolution, 2.0 * half_n / resolution
    x, y = (mstar + nstar) / 3.0, (mstar - 2.0 * nstar) / 3.0
    return _report(best, (x, y), resolution, bound, "min")


# -- lower bounds on the minimal sectional curvature ----------------------------


def _exact_sqrt(value):
    """sqrt of an exact nonnegative quantity, denesting where possible."""
    return _exact(value).sqrt()


def kupper_lower(alpha):
    """Lower bound on a1 when the largest sectional curvature equals alpha <= 1.

    a1 >= (15 - 8 alpha - sqrt3 * sqrt(96 alpha^2 - 80 alpha + 19)) / 28,
    valid for 1/3 <= alpha <= 1.  Exact at rational alpha and at the square-root
    thresholds where the radical denests (e.g. alpha = sqrt3/2 gives exactly 0).
    """
    if not (1.0 / 3.0 - 1e-12 <= float(alpha) <= 1.0 + 1e-12):
        raise DomainError("alpha must lie in [1/3, 1]")
    if _is_exact(alpha):
        t = 96 * _exact(alpha) * _exact(alpha) - 80 * _exact(alpha) + 19
        root = _exact_sqrt(3 * t)
        return (15 - 8 * _exact(alpha) - root) / 28
    a = float(alpha)
    return (15.0 - 8.0 * a - math.sqrt(3.0) * math.sqrt(96.0 * a * a - 80.0 * a + 19.0)) / 28.0


def kdiff_lower(alpha):
    """Lower bound on a1 when the sectional spread a3 - a2 equals alpha.

    a1 >= (3 - 2 alpha - sqrt(1 + 8 alpha^2 - 4 alpha)) / 6 for 0 <= alpha < 2.
    Exact inputs give exact output when the radical denests (alpha = sqrt3 - 1
    gives exactly 0 since 37 - 20 sqrt3 = (5 - 2 sqrt3)^2).
    """
    if not (0.0 <= float(alpha) < 2.0):
        raise DomainError("alpha must lie in [0, 2)")
    if _is_exact(alpha):
        t = 1 + 8 * _exact(alpha) * _exact(alpha) - 4 * _exact(alpha)
        return (3 - 2 * _exact(alpha) - _exact_sqrt(t)) / 6
    a = float(alpha)
    return (3.0 - 2.0 * a - math.sqrt(1.0 + 8.0 * a * a - 4.0 * a)) / 6.0


def a2a1_gap(delta):
    """Upper bound on x = a2 - a1 when a1 = delta and 4 a2 <= 1 + a1.

    x <= 1 - 3 delta - sqrt(3 + 18 delta^2 - 15 delta)/2 on 0 <= delta <= 1/3.
    The radicand is 3(1 - 2 delta)(1 - 3 delta) scaled: its discriminant
    identity 16 * radicand = 48 (1 - 2 delta)(1 - 3 delta) is checked on every
    call and degenerates exactly at delta = 1/3.
    """
    if not (0.0 <= float(delta) <= 1.0 / 3.0 + 1e-12):
        raise DomainError("delta must lie in [0, 1/3]")
    if _is_exact(delta):
        d = Fraction(delta) if not isinstance(delta, QuadraticSurd) else delta
        radicand = 3 + 18 * d * d - 15 * d
        disc = 48 * (1 - 2 * d) * (1 - 3 * d)
        if 16 * _exact(radicand) != _exact(disc):
            raise ExactnessError("discriminant identity failed")  # pragma: no cover
        if float(radicand) < 0:
            raise DomainError("negative discriminant")  # pragma: no cover
        return 1 - 3 * d - _exact_sqrt(radicand) / 2
    d = float(delta)
    radicand = 3.0 + 18.0 * d * d - 15.0 * d
    disc = 48.0 * (1.0 - 2.0 * d) * (1.0 - 3.0 * d)
    if abs(16.0 * radicand - disc) > 1e-9:
        raise ExactnessError("discriminant identity failed")  # pragma: no cover
    radicand = max(0.0, radicand)
    return 1.0 - 3.0 * d - math.sqrt(radicand) / 2.0


# -- polytope oracles ------------------------------------------------------------

POINTWISE_LEMMAS = ("kupper", "kdiff", "a2a1")


def _polytope_scan(a1, a2, a3, resolution):
    """Feasible-(b1, b2) scan helper shared by the polytope oracles.

    a1, a2, a3 are 1-d arrays of candidate sectional triples (sorted, summing
    to 1).  Returns boolean feasibility per triple plus the per-triple Hamilton
    verdicts on an adaptive (b1, b2) grid covering the mixed-part polytope.
    """
    s1 = a2 - a1
    s2 = a3 - a1
    s3 = a3 - a2
    bb1 = (s1 + s2) / 3.0
    bb2 = (s1 + s3) / 3.0
    t = np.linspace(-1.0, 1.0, resolution + 1)
    b1 = bb1[:, None, None] * t[None, :, None]
    b2 = bb2[:, None, None] * t[None, None, :]
    b3 = -b1 - b2
    tol = 1e-12
    feas = (
        (np.abs(b2 - b1) <= s1[:, None, None] + tol)
        & (np.abs(b3 - b1) <= s2[:, None, None] + tol)
        & (np.abs(b3 - b2) <= s3[:, None, None] + tol)
    )
    gap = a1[:, None, None] - (
        a1[:, None, None] ** 2
        + b1 * b1
        + 2.0 * (a2 * a3)[:, None, None]
        + 2.0 * b2 * b3
    )
    feas &= gap >= -HAMILTON_PREDICATE_TOL
    return feas, b1, b2


def pointwise_bound_oracle(lemma: str, param: float, resolution: int = 120) -> GridReport:
    """Brute-force extremum over the full normal-form polytope plus hypothesis.

    The polytope (sorted a summing to 1, b summing to 0 and dominated by the
    a-gaps, the pointwise quadratic inequality) is swept on a regular grid.
    The lemma hypothesis eliminates one a-coordinate, so the grid is
    (free a, b1, b2) with the b-box adapted to each sectional triple:

      kupper: fix a3 = param, minimize a1   (bound: kupper_lower)
      kdiff:  fix a3 - a2 = param, minimize a1   (bound: kdiff_lower)
      a2a1:   fix a1 = param, maximize a2 - a1 under 4 a2 <= 1 + a1
              (bound: a2a1_gap)
    """
    p = float(param)
    r = resolution
    if lemma == "kupper":
        bound = float(kupper_lower(p))
        lo, hi = 1.0 - 2.0 * p, (1.0 - p) / 2.0
        if lo > hi + 1e-15:
            return _infeasible(r, bound, "min")
        a1 = np.linspace(lo, hi, r + 1)
        a2 = 1.0 - p - a1
        a3 = np.full_like(a1, p)
        objective, sense = a1, "min"
    elif lemma == "kdiff":
        bound = float(kdiff_lower(p))
        lo, hi = -1.0, (1.0 - p) / 3.0
        a1 = np.linspace(lo, hi, r + 1)
        a2 = (1.0 - a1 - p) / 2.0
        a3 = a2 + p
        objective, sense = a1, "min"
    elif lemma == "a2a1":
        bound = float(a2a1_gap(p))
        lo, hi = p, min((1.0 + p) / 4.0, (1.0 - p) / 2.0)
        if lo > hi + 1e-15:
            return _infeasible(r, bound, "max")
        a2 = np.linspace(lo, hi, r + 1)
        a1 = np.full_like(a2, p)
        a3 = 1.0 - p - a2
        objective, sense = a2 - a1, "max"
    else:
        raise DomainError(f"unknown lemma {lemma!r}; choose from {POINTWISE_LEMMAS}")

    order = (a1 <= a2 + 1e-12) & (a2 <= a3 + 1e-12)
    feas, b1, b2 = _polytope_scan(a1, a2, a3, r)
    feas &= order[:, None, None]
    if not np.any(feas):
        return _infeasible(r, bound, sense)
    obj3 = np.broadcast_to(objective[:, None, None], feas.shape)
    masked = np.where(feas, obj3, -np.inf if sense == "max" else np.inf)
    flat = int(np.argmax(masked) if sense == "max" else np.argmin(masked))
    i, j, k = np.unravel_index(flat, feas.shape)
    arg = (
        (float(a1[i]), float(a2[i]), float(a3[i])),
        (float(b1[i, j, 0]), float(b2[i, 0, k]), float(-b1[i, j, 0] - b2[i, 0, k])),
    )
    return _report(float(obj3[i, j, k]), arg, r, bound, sense)


# -- the sharp constants ----------------------------------------------------------


@dataclass(frozen=True)
class SharpConstant:
    """One exact threshold with a 15-digit decimal enclosure."""

    name: str
    value: QuadraticSurd
    role: str

    @property
    def decimal(self) -> str:
        return self.value.decimal(15)

    @property
    def enclosure(self) -> tuple[str, str]:
        return self.value.enclosure(15)


def sharp_constants() -> dict:
    """The sharp thresholds of the classification, exactly, plus identity checks.

    The two symbolic checks recompute the endpoint algebra of the main
    theorems in surd arithmetic: with B = (14 - sqrt19)/12 the chained
    sectional-upper pipeline tops out at 4(B - kupper_lower(B))/sqrt6, and
    with D = (7 - sqrt19)/4 the spread pipeline tops out at
    (2 + 2D - 6 kdiff_lower(D))/sqrt6; both must equal sqrt(3/2) = sqrt6/2
    exactly.
    """
    s19 = QuadraticSurd(0, 1, 19, 1)
    s3 = QuadraticSurd(0, 1, 3, 1)
    s6 = QuadraticSurd(0, 1, 6, 1)
    s105 = QuadraticSurd(0, 1, 105, 1)
    constants = [
        SharpConstant(
            "sec_upper_threshold",
            (14 - s19) / 12,
            "largest admissible maximum sectional curvature (condition a)",
        ),
        SharpConstant(
            "weighted_sum_lower",
            (s19 - 3) / 4,
            "smallest admissible 2 K(e1,e2) + K(e1,e3) over adapted frames (condition b)",
        ),
        SharpConstant(
            "sec_diff_upper",
            (7 - s19) / 4,
            "largest admissible sectional spread a3 - a2 (condition b)",
        ),
        SharpConstant(
            "apriori_min_lower",
            (7 - s105) / 28,
            "unconditional lower bound on the minimum sectional curvature at a3 = 1",
        ),
        SharpConstant(
            "nonneg_sec_threshold",
            s3 / 2,
            "sectional upper bound forcing nonnegative sectional curvature",
        ),
        SharpConstant(
            "nonneg_diff_threshold",
            s3 - 1,
            "sectional spread forcing nonnegative sectional curvature",
        ),
        SharpConstant(
            "euler_pinch_alpha",
            (2 - s3) / 6,
            "pinching level at which the Euler-characteristic cap reaches 8",
        ),
        SharpConstant(
            "cp2_sec_upper",
            QuadraticSurd.from_rational(Fraction(2, 3)),
            "maximum sectional curvature of the projective-plane model",
        ),
        SharpConstant(
            "weyl_sum_threshold",
            s6 / 2,
            "borderline |W+| + |W-| for the elliptic rigidity argument",
        ),
    ]

    beta = (14 - s19) / 12
    beta1 = kupper_lower(beta)
    upper_chain = 4 * (beta - beta1) / s6
    beta_d = (7 - s19) / 4
    beta1_d = kdiff_lower(beta_d)
    diff_chain = (2 + 2 * beta_d - 6 * beta1_d) / s6
    target = s6 / 2
    identities = {
        "upper_pipeline_endpoint": upper_chain == target,
        "diff_pipeline_endpoint": diff_chain == target,
        "upper_gap_rational": (beta - beta1) == Fraction(3, 4),
        "diff_combination_rational": (2 + 2 * beta_d - 6 * beta1_d) == 3,
    }
    return {"constants": {c.name: c for c in constants}, "identities": identities}
