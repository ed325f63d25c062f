import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apollodepth.exactnum import (
    QuadValue,
    RadicandMismatchError,
    Rational,
    exact_sqrt,
    format_rational,
    parse_rational,
)


class TestRationalSurface:
    def test_addition(self):
        assert Rational(1, 3) + Rational(1, 12) == Rational(5, 12)

    def test_comparison(self):
        assert Rational(1, 16) < Rational(1, 9)

    def test_product_identity(self):
        assert Rational(9, 16) * Rational(16, 9) == 1

    def test_division_by_zero_is_distinct(self):
        with pytest.raises(ZeroDivisionError):
            Rational(1, 2) / Rational(0)

    def test_always_reduced_with_positive_denominator(self):
        x = Rational(6, -4)
        assert x.numerator == -3 and x.denominator == 2

    def test_parse_and_format(self):
        assert parse_rational("5/12") == Rational(5, 12)
        assert parse_rational("0.0001") == Rational(1, 10000)
        assert parse_rational("-7") == -7
        assert format_rational(Rational(5, 12)) == "5/12"
        assert format_rational(Rational(15)) == "15"
        with pytest.raises(ValueError):
            parse_rational("nope")


class TestExactSqrt:
    def test_examples(self):
        assert exact_sqrt(Fraction(9, 16)) == Fraction(3, 4)
        assert exact_sqrt(Fraction(1, 12)) is None
        assert exact_sqrt(0) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            exact_sqrt(Fraction(-1, 4))

    @given(st.fractions(min_value=0, max_value=10**6))
    @settings(max_examples=300)
    def test_root_squares_back(self, x):
        root = exact_sqrt(x)
        if root is not None:
            assert root * root == x

    @given(st.fractions(min_value=0, max_value=10**6))
    @settings(max_examples=300)
    def test_absent_matches_integer_oracle(self, x):
        # p/q in lowest terms is a square iff p*q is a perfect square
        root = exact_sqrt(x)
        pq = x.numerator * x.denominator
        oracle_square = math.isqrt(pq) ** 2 == pq
        assert (root is not None) == oracle_square


class TestQuadValue:
    def test_additive_inverse(self):
        a = QuadValue(3, -2, 3)
        b = QuadValue(-3, 2, 3)
        assert (a + b).sign() == 0

    def test_scaling(self):
        assert 2 * QuadValue(1, 1, 2) == QuadValue(2, 2, 2)

    def test_rational_collapse(self):
        half = QuadValue(Fraction(1, 2), 0, 5)
        assert (half + half).as_rational() == 1

    def test_perfect_square_normalizes(self):
        v = QuadValue(1, 2, Fraction(9, 4))
        assert v.s == 0 and v.as_rational() == 4

    def test_sign_cases(self):
        assert QuadValue(3, -2, 3).sign() == -1   # 9 < 12
        assert QuadValue(7, -2, 12).sign() == 1   # 49 > 48
        assert QuadValue(0, 0, 7).sign() == 0
        assert QuadValue(0, 1, 2).sign() == 1
        assert QuadValue(-1, -1, 2).sign() == -1

    def test_mismatched_radicands_rejected(self):
        with pytest.raises(RadicandMismatchError):
            QuadValue(1, 1, 2) + QuadValue(1, 1, 3)

    def test_rational_mixes_with_any_radicand(self):
        assert QuadValue(1, 0, 5) + QuadValue(0, 1, 2) == QuadValue(1, 1, 2)

    def test_negative_radicand_rejected(self):
        with pytest.raises(ValueError):
            QuadValue(1, 1, -1)

    def test_immutable(self):
        v = QuadValue(1, 1, 2)
        with pytest.raises(AttributeError):
            v.r = Fraction(2)

    def test_multiplication(self):
        v = QuadValue(1, 1, 2)
        assert v * v == QuadValue(3, 2, 2)

    def test_ordering(self):
        assert QuadValue(0, 1, 2) < QuadValue(3, 0, 2)
        assert QuadValue(3, 2, 3) > 6  # 3 + 2*1.732... > 6

    def test_json_round_trip(self):
        v = QuadValue(Fraction(3, 2), -2, Fraction(4, 9) + Fraction(1, 7))
        assert QuadValue.from_json(v.to_json()) == v


def test_sign_agrees_with_high_precision_evaluation():
    # 10^4 random values; compare with 200-digit evaluation whenever that
    # evaluation is bounded away from zero by 1e-50.
    rng = random.Random(991)
    checked = 0
    with mpmath.workdps(200):
        for _ in range(10_000):
            r = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
            s = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
            d = Fraction(rng.randint(0, 10**6), rng.randint(1, 10**4))
            value = QuadValue(r, s, d)
            approx = (
                mpmath.mpf(r.numerator) / r.denominator
                + mpmath.mpf(s.numerator) / s.denominator
                * mpmath.sqrt(mpmath.mpf(d.numerator) / d.denominator)
            )
            if abs(approx) <= mpmath.mpf("1e-50"):
                continue
            checked += 1
            assert value.sign() == (1 if approx > 0 else -1)
    assert checked > 9_000


def test_operations_are_referentially_transparent():
    a = QuadValue(Fraction(2, 3), Fraction(-5, 7), Fraction(11, 13))
    b = QuadValue(Fraction(1, 9), Fraction(4, 7), Fraction(11, 13))
    assert a + b == a + b
    assert a * b == a * b
    assert (a - b).sign() == (a - b).sign()
