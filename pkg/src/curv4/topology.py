"""Topological consequences of pointwise curvature data.

The Gauss-Bonnet and signature integrands of an Einstein four-manifold are
algebraic in the curvature operator, so pointwise pinching turns into volume
bounds on the Euler characteristic and into short lists of admissible
(signature, Euler characteristic) pairs.  Everything is normalized to Rc = g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bivector import CurvatureOperator, duality_decompose
from .errors import DomainError
from .surd import QuadraticSurd

# volume of the round 4-sphere with Rc = g (radius sqrt3): (8 pi^2 / 3) * 9
SPHERE_VOLUME = 24.0 * math.pi**2

# products of unit 2-spheres carry Rc = g directly, so the factors have K = 1
S2XS2_VOLUME = 16.0 * math.pi**2

_EXACT_TYPES = (int, Fraction, QuadraticSurd)


@dataclass(frozen=True)
class GaussBonnetDensities:
    """Euler and signature integrands of one curvature operator.

    chi_density -- (|W+|^2 + |W-|^2 - |E|^2/2 + S^2/24) / (8 pi^2)
    tau_density -- (|W+|^2 - |W-|^2) / (12 pi^2)
    chi_coeff, tau_coeff -- the same values times pi^2 as exact rationals,
    present when the operator decomposes exactly (density = coeff / pi^2).
    """

    chi_density: float
    tau_density: float
    chi_coeff: Fraction | None = None
    tau_coeff: Fraction | None = None


def gbc_integrands(op: CurvatureOperator) -> GaussBonnetDensities:
    """Pointwise Gauss-Bonnet and signature densities of an operator."""
    d = duality_decompose(op)
    wp2 = d.w_plus.norm_sq()
    wm2 = d.w_minus.norm_sq()
    e2 = d.traceless_ricci_norm_sq
    s = d.s
    pi2 = math.pi**2
    if all(isinstance(x, (int, Fraction)) for x in (wp2, wm2, e2, s)):
        chi_num = Fraction(wp2) + Fraction(wm2) - Fraction(e2) / 2 + Fraction(s) ** 2 / 24
        tau_num = Fraction(wp2) - Fraction(wm2)
        return GaussBonnetDensities(
            float(chi_num) / (8.0 * pi2),
            float(tau_num) / (12.0 * pi2),
            chi_num / 8,
            tau_num / 12,
        )
    chi_num = float(wp2) + float(wm2) - float(e2) / 2.0 + float(s) ** 2 / 24.0
    tau_num = float(wp2) - float(wm2)
    return GaussBonnetDensities(chi_num / (8.0 * pi2), tau_num / (12.0 * pi2))


def hitchin_thorpe_slack(chi: int, tau: int):
    """Slack 2 chi - 3 |tau| of the oriented Einstein obstruction (exact)."""
    return 2 * chi - 3 * abs(tau)


def hitchin_thorpe(chi: int, tau: int) -> bool:
    """Oriented Einstein obstruction |tau| <= 2 chi / 3, checked exactly."""
    return hitchin_thorpe_slack(chi, tau) >= 0


def euler_upper_per_vol(alpha, beta):
    """Upper bound on 8 pi^2 * (Euler density) given alpha <= K <= beta, Rc = g.

    The bound is 8 (beta^2 - (1 - alpha)(alpha + beta)) + 10/3 and requires
    alpha <= 1/3 <= beta (the extremal sectional curvatures always straddle
    1/3).  Exact inputs give exact output.
    """
    if float(alpha) > float(beta) + 1e-12:
        raise DomainError("need alpha <= beta")
    if float(alpha) > 1.0 / 3.0 + 1e-12 or float(beta) < 1.0 / 3.0 - 1e-12:
        raise DomainError("sectional extrema must straddle 1/3")
    if all(isinstance(x, _EXACT_TYPES) for x in (alpha, beta)):
        if not isinstance(alpha, QuadraticSurd):
            alpha = Fraction(alpha)
        if not isinstance(beta, QuadraticSurd):
            beta = Fraction(beta)
        return 8 * (beta * beta - (1 - alpha) * (alpha + beta)) + Fraction(10, 3)
    a, b = float(alpha), float(beta)
    return 8.0 * (b * b - (1.0 - a) * (a + b)) + 10.0 / 3.0


# the volume cap 3 * euler_upper_per_vol never exceeds 10 on the pinched
# range, so no admissible Euler characteristic is ever above 9
CHI_HARD_CAP = 9


@dataclass(frozen=True)
class TopologyReport:
    """Admissible (signature, Euler characteristic) pairs at pinching level alpha.

    pairs are (tau, chi) with tau >= 0 (orientation fixed to make it so),
    sorted by chi then tau.  `cap` is the strict upper bound 3 * C(alpha) on
    chi, exact when alpha was exact.  When the filters exclude everything the
    constant-curvature fallback (0, 2) is reported with degenerate = True.
    """

    alpha: object
    cap: object
    pairs: tuple
    degenerate: bool
    trail: tuple


def admissible_types(alpha) -> TopologyReport:
    """Enumerate (tau, chi) pairs compatible with the pinch alpha <= K, Rc = g.

    Filters, in order: chi >= 2 (positive Ricci kills b1), chi = tau mod 2,
    chi > 15 |tau| / 4 (signature bound, strict), chi <= 9, and the strict
    volume cap chi < 3 * C(alpha) with beta = 1 - 2 alpha.  Exact alpha makes
    the cap comparison exact, which matters on the boundary where the cap is
    an integer.
    """
    if not (-1e-12 <= float(alpha) <= 1.0 / 3.0 + 1e-12):
        raise DomainError("pinching level alpha must lie in [0, 1/3]")
    if isinstance(alpha, _EXACT_TYPES):
        beta = 1 - alpha - alpha
    else:
        alpha = float(alpha)
        beta = 1.0 - 2.0 * alpha
    cap = 3 * euler_upper_per_vol(alpha, beta)
    cap_repr = cap.expression() if isinstance(cap, QuadraticSurd) else str(cap)
    trail = [
        "chi >= 2: positive Einstein constant forces first Betti number 0",
        "chi = tau (mod 2): intersection-form parity",
        "4 chi > 15 |tau|: strict signature bound",
        f"chi <= {CHI_HARD_CAP}: hard cap (the volume cap never reaches 10)",
        f"chi < {cap_repr}: strict volume cap 3 C(alpha) at alpha = {float(alpha):.6g}",
    ]
    pairs = []
    for chi in range(2, CHI_HARD_CAP + 1):
        if not chi < cap:
            continue
        for tau in range(0, 3):
            if (chi - tau) % 2 != 0:
                continue
            if not 4 * chi > 15 * tau:
                continue
            pairs.append((tau, chi))
    pairs.sort(key=lambda p: (p[1], p[0]))
    degenerate = not pairs
    if degenerate:
        pairs = [(0, 2)]
        trail.append(
            "no pair survived the volume cap: boundary pinching, "
            "falling back to the constant-curvature type (0, 2)"
        )
    return TopologyReport(alpha, cap, tuple(pairs), degenerate, tuple(trail))
