"""Exact quadratic-surd arithmetic: canonical form, ordering, roots, decimals."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curv4 import QuadraticSurd
from curv4.errors import ExactnessError

RADICANDS = (2, 3, 5, 6, 19, 105)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=40
)


def surds(radicand):
    return st.builds(
        lambda a, b: QuadraticSurd.from_fractions(a, b, radicand), rationals, rationals
    )


def test_canonical_form():
    # square factors fold out of the radicand, r = 1 folds into the rational part
    assert QuadraticSurd(0, 1, 12, 2) == QuadraticSurd(0, 1, 3, 1)
    assert QuadraticSurd(1, 5, 1, 2) == Fraction(3)
    assert QuadraticSurd(2, 0, 19, 4) == Fraction(1, 2)
    # negative denominators normalize away
    assert QuadraticSurd(-1, -1, 2, -1) == QuadraticSurd(1, 1, 2, 1)
    assert QuadraticSurd(2, 4, 6, 8) == QuadraticSurd(1, 2, 6, 4)


def test_constructor_errors():
    with pytest.raises(ZeroDivisionError):
        QuadraticSurd(1, 1, 2, 0)
    with pytest.raises(ValueError):
        QuadraticSurd(0, 1, -2, 1)


@given(surds(19), surds(19), surds(19))
@settings(max_examples=60, deadline=None)
def test_field_laws_single_radicand(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x + y == y + x and x * y == y * x
    assert (x - y) + y == x
    if y != 0:
        assert (x / y) * y == x


@given(surds(6), rationals)
@settings(max_examples=60, deadline=None)
def test_mixed_rational_arithmetic(x, c):
    assert x + c - c == x
    assert x * c == c * x
    if c != 0:
        assert (x * c) / c == x
    # comparisons agree with floats whenever floats can separate the values
    if abs(float(x) - float(c)) > 1e-9:
        assert (x < c) == (float(x) < float(c))


def test_cross_field_comparison():
    s2 = QuadraticSurd(0, 1, 2, 1)
    s3 = QuadraticSurd(0, 1, 3, 1)
    assert s2 < s3
    assert not s2 == s3
    assert (14 - QuadraticSurd(0, 1, 19, 1)) / 12 > (2 - s3) / 6
    with pytest.raises(ExactnessError):
        s2 + s3  # sqrt2 and sqrt3 generate different fields


def test_rational_surds_hash_like_fractions():
    assert hash(QuadraticSurd(3, 0, 0, 6)) == hash(Fraction(1, 2))
    assert QuadraticSurd(3, 0, 0, 6) == Fraction(1, 2)
    d = {QuadraticSurd(1, 1, 5, 2): "golden"}
    assert d[QuadraticSurd(2, 2, 5, 4)] == "golden"


def test_pow_and_abs():
    x = (1 - QuadraticSurd(0, 1, 19, 1)) / 3
    assert x**0 == 1
    assert x**5 == x * x * x * x * x
    assert abs(x) == -x  # 1 - sqrt19 < 0


def test_sqrt_rational_and_denesting():
    assert QuadraticSurd.sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)
    assert QuadraticSurd.sqrt_rational(Fraction(3, 2)) == QuadraticSurd(0, 1, 6, 2)
    s19 = QuadraticSurd(0, 1, 19, 1)
    y = 3 * s19 - 6  # (3 sqrt19 - 6)^2 = 207 - 36 sqrt19
    assert (y * y).sqrt() == y
    with pytest.raises(ExactnessError):
        (1 + QuadraticSurd(0, 1, 2, 1)).sqrt()
    with pytest.raises(ValueError):
        (QuadraticSurd(0, 1, 2, 1) - 2).sqrt()


@given(surds(105))
@settings(max_examples=60, deadline=None)
def test_decimal_is_truncation(x):
    digits = 12
    lo = Fraction(x.decimal(digits))
    assert lo <= x < lo + Fraction(1, 10**digits)
    slo, shi = x.enclosure(digits)
    assert Fraction(slo) <= x <= Fraction(shi)
    assert Fraction(shi) - Fraction(slo) == Fraction(1, 10**digits)


def test_decimal_known_values():
    s19 = QuadraticSurd(0, 1, 19, 1)
    s105 = QuadraticSurd(0, 1, 105, 1)
    assert ((14 - s19) / 12).decimal(10) == "0.8034250880"
    assert ((7 - s105) / 28).decimal(7) == "-0.1159626"
    assert QuadraticSurd.from_rational(Fraction(1, 3)).decimal(5) == "0.33333"
    assert QuadraticSurd.from_rational(Fraction(-1, 3)).decimal(5) == "-0.33334"


@given(surds(19))
@settings(max_examples=60, deadline=None)
def test_float_conversion_close(x):
    assert abs(float(x) - (float(x.rational_part()) + float(x.surd_part()) * math.sqrt(19))) <= 1e-9 * max(
        1.0, abs(float(x))
    )


def test_expression_strings():
    s19 = QuadraticSurd(0, 1, 19, 1)
    assert "sqrt(19)" in ((14 - s19) / 12).expression()
    assert QuadraticSurd.from_rational(Fraction(2, 3)).expression() == "2/3"
