"""Closed-form pinching bounds against brute-force grid oracles."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curv4 import (
    QuadraticSurd,
    a2a1_gap,
    berger_data,
    hamilton_gap,
    hamilton_holds,
    kdiff_lower,
    kupper_lower,
    lemma_algebraic2_min,
    lemma_algebraic2_oracle,
    lemma_k3k1_bounds,
    lemma_k3k1_oracle,
    model_space,
    pointwise_bound_oracle,
    sharp_constants,
)
from curv4.errors import DomainError

S19 = QuadraticSurd(0, 1, 19, 1)
S3 = QuadraticSurd(0, 1, 3, 1)


# ---------------------------------------------------------------- hamilton


def test_hamilton_exact_on_models():
    for name in ("sphere", "cp2", "s2xs2"):
        g = hamilton_gap(berger_data(model_space(name)))
        assert g == 0 and not isinstance(g, float)
        assert hamilton_holds(berger_data(model_space(name)))


# ---------------------------------------------------------------- k3 vs k1


def test_k3k1_closed_form_exact_values():
    bound, boundary = lemma_k3k1_bounds(Fraction(5, 6), Fraction(1))
    assert bound == QuadraticSurd(0, 1, 6, 3)  # 2/sqrt(6)
    assert boundary == Fraction(2, 3)
    with pytest.raises(DomainError):
        lemma_k3k1_bounds(Fraction(0), Fraction(1))
    with pytest.raises(DomainError):
        lemma_k3k1_bounds(Fraction(5, 6), Fraction(-1))


def test_k3k1_feasibility_boundary_is_sharp():
    # delta <= 6 alpha - 4 exactly; alpha = 3/4 puts the edge at delta = 1/2
    assert lemma_k3k1_oracle(0.75, 0.5, resolution=40).feasible
    assert not lemma_k3k1_oracle(0.75, 0.5 + 1e-9, resolution=40).feasible
    report = lemma_k3k1_oracle(0.75, 0.6, resolution=40)
    assert not report.feasible and report.gap == math.inf


@given(
    st.floats(2 / 3 + 1e-6, 1.5),
    st.floats(0.0, 0.98),
)
@settings(max_examples=25, deadline=None)
def test_k3k1_bound_never_violated(alpha, frac):
    # frac < 1 keeps delta strictly inside the wedge; the exact boundary is
    # exercised separately where float rounding is under control
    delta = frac * (6 * alpha - 4)
    if delta < 0:
        delta = 0.0
    report = lemma_k3k1_oracle(alpha, delta, resolution=60)
    assert report.feasible
    assert report.violation <= 1e-9
    assert report.extremum <= report.bound + 1e-9


def test_k3k1_oracle_converges():
    for res in (60, 120):
        report = lemma_k3k1_oracle(5 / 6, 1.0, resolution=res)
        assert report.sense == "max"
        assert -1e-12 <= report.gap <= 10.0 / res


# ---------------------------------------------------------------- algebraic2


def test_algebraic2_branches_exact():
    # branch split at b = 2a; both expressions meet there at -2 a^2
    a = Fraction(1, 4)
    low = lemma_algebraic2_min(a, 2 * a - Fraction(1, 10**9))
    high = lemma_algebraic2_min(a, 2 * a + Fraction(1, 10**9))
    at = lemma_algebraic2_min(a, 2 * a)
    assert at == -2 * a * a
    assert abs(float(low - at)) < 1e-8 and abs(float(high - at)) < 1e-8
    assert lemma_algebraic2_min(Fraction(1, 2), Fraction(2)) == Fraction(-11, 6)
    assert lemma_algebraic2_min(Fraction(1, 2), Fraction(1, 2)) == Fraction(-1, 8)
    with pytest.raises(DomainError):
        lemma_algebraic2_min(-1, 1)
    with pytest.raises(DomainError):
        lemma_algebraic2_min(1, -1)


@given(st.floats(0.0, 3.0), st.floats(0.0, 3.0))
@settings(max_examples=15, deadline=None)
def test_algebraic2_oracle_respects_bound(a, b):
    report = lemma_algebraic2_oracle(a, b, resolution=200)
    closed = float(lemma_algebraic2_min(a, b))
    assert report.extremum >= closed - 1e-6
    assert report.violation <= 1e-6


def test_algebraic2_degenerate_slice():
    report = lemma_algebraic2_oracle(1.0, 0.0, resolution=50)
    assert report.extremum == 0.0  # only the origin is admissible
    assert report.bound == 0.0


# ------------------------------------------------------ polytope thresholds


def test_threshold_exact_anchors():
    assert kupper_lower(Fraction(2, 3)) == Fraction(1, 6)
    assert kupper_lower(Fraction(1, 3)) == Fraction(1, 3)
    assert kupper_lower(S3 / 2) == 0
    assert kupper_lower((14 - S19) / 12) == (5 - S19) / 12
    assert kupper_lower(1) == (7 - QuadraticSurd(0, 1, 105, 1)) / 28
    assert kdiff_lower(0) == Fraction(1, 3)
    assert kdiff_lower(S3 - 1) == 0
    assert a2a1_gap(0) == (2 - S3) / 2
    assert a2a1_gap(Fraction(1, 6)) == 0
    assert a2a1_gap(Fraction(1, 3)) == 0


def test_threshold_domains():
    for bad in (Fraction(1, 4), Fraction(11, 10), -1):
        with pytest.raises(DomainError):
            kupper_lower(bad)
    for bad in (Fraction(-1, 10), 2, Fraction(5, 2)):
        with pytest.raises(DomainError):
            kdiff_lower(bad)
    for bad in (Fraction(-1, 10), Fraction(2, 5)):
        with pytest.raises(DomainError):
            a2a1_gap(bad)


def test_threshold_monotone_decreasing():
    k_prev = None
    for i in range(1000):
        x = 1 / 3 + (2 / 3) * i / 999
        v = kupper_lower(x)
        if k_prev is not None:
            assert v <= k_prev + 1e-15
        k_prev = v
    k_prev = None
    for i in range(1000):
        v = kdiff_lower(1.9999 * i / 999)
        if k_prev is not None:
            assert v <= k_prev + 1e-15
        k_prev = v


def test_a2a1_gap_negative_inside_window():
    assert float(a2a1_gap(Fraction(1, 4))) < 0
    assert float(a2a1_gap(0.2)) < 0


def test_pointwise_feasibility_pattern():
    # the constrained polytopes are empty for mid-range parameters: the
    # closed forms there certify vacuously and the oracle must say so
    for alpha, feasible in ((1 / 3, True), (0.4, False), (0.5, False),
                            (0.6, False), (2 / 3, True), (0.8, True), (1.0, True)):
        assert pointwise_bound_oracle("kupper", alpha, resolution=24).feasible == feasible
    for p, feasible in ((0.0, True), (0.1, False), (0.25, False), (0.4, False),
                        (0.5, True), (1.0, True), (1.5, True)):
        assert pointwise_bound_oracle("kdiff", p, resolution=24).feasible == feasible
    for t, feasible in ((0.0, True), (0.1, True), (1 / 6, True), (0.2, False),
                        (0.3, False), (1 / 3, True)):
        assert pointwise_bound_oracle("a2a1", t, resolution=24).feasible == feasible
    with pytest.raises(DomainError):
        pointwise_bound_oracle("nope", 0.5)


def test_pointwise_oracles_converge_to_closed_forms():
    anchors = (("kupper", 2 / 3), ("kupper", 0.9), ("kdiff", 0.0),
               ("kdiff", 0.75), ("a2a1", 0.05), ("a2a1", 1 / 6))
    for name, x in anchors:
        for res in (60, 120):
            report = pointwise_bound_oracle(name, x, resolution=res)
            assert report.feasible
            assert report.violation <= 1e-9
            assert report.gap <= 10.0 / res


def test_infeasible_report_gap():
    report = pointwise_bound_oracle("kupper", 0.5, resolution=24)
    assert report.gap == math.inf


# ---------------------------------------------------------------- constants


def test_sharp_constants_table():
    table = sharp_constants()
    names = {
        "sec_upper_threshold", "weighted_sum_lower", "sec_diff_upper",
        "apriori_min_lower", "nonneg_sec_threshold", "nonneg_diff_threshold",
        "euler_pinch_alpha", "cp2_sec_upper", "weyl_sum_threshold",
    }
    assert set(table["constants"]) == names
    for const in table["constants"].values():
        lo, hi = const.enclosure
        assert Fraction(lo) <= Fraction(hi)
        assert float(Fraction(lo)) <= float(const.value) <= float(Fraction(hi)) + 1e-12
        assert const.decimal.startswith(lo[:8])
    assert all(table["identities"].values())
    beta = table["constants"]["sec_upper_threshold"].value
    assert beta - kupper_lower(beta) == Fraction(3, 4)
