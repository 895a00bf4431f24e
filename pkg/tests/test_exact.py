import math
from fractions import Fraction

import pytest

from parabolic_lab.exact import ParseError, QuadExpr, parse_real, parse_real_vector, squarefree_decompose


def test_squarefree_decompose():
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(8) == (2, 2)
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(49) == (7, 1)


def test_sqrt_arithmetic():
    r2, r3 = QuadExpr.sqrt(2), QuadExpr.sqrt(3)
    assert r2 * r2 == QuadExpr.rational(2)
    assert r2 * r3 == QuadExpr.sqrt(6)
    assert QuadExpr.sqrt(8) == QuadExpr.rational(2) * r2
    assert (r2 + r3) * (r2 - r3) == QuadExpr.rational(-1)
    assert (r2 + 1) * (r2 - 1) == QuadExpr.rational(1)


def test_power_and_division():
    r5 = QuadExpr.sqrt(5)
    golden = (r5 - 1) / 2
    # golden ratio minus one satisfies g^2 + g - 1 = 0
    assert (golden * golden + golden - 1).is_zero()
    with pytest.raises(TypeError):
        QuadExpr.rational(1) / r5


def test_floor_exact():
    r2 = QuadExpr.sqrt(2)
    assert r2.floor() == 1
    assert (r2 * 5).floor() == 7          # 7.071...
    assert (-r2).floor() == -2
    assert QuadExpr.rational(Fraction(7, 2)).floor() == 3
    assert QuadExpr.rational(-3).floor() == -3
    # value extremely close to an integer but exactly rational
    assert QuadExpr.rational(Fraction(10**30 - 1, 10**30)).floor() == 0


def test_to_mpf_accuracy():
    val = parse_real("sqrt2+sqrt3")
    assert abs(float(val) - (math.sqrt(2) + math.sqrt(3))) < 1e-12


def test_parser_expressions():
    assert parse_real("3/4") == QuadExpr.rational(Fraction(3, 4))
    assert parse_real("0.25") == QuadExpr.rational(Fraction(1, 4))
    assert parse_real("2*sqrt2") == QuadExpr.sqrt(2) * 2
    assert parse_real("(sqrt5-1)/2") == (QuadExpr.sqrt(5) - 1) / 2
    assert parse_real("-sqrt2 + 1") == QuadExpr.rational(1) - QuadExpr.sqrt(2)
    assert parse_real("sqrt 12") == QuadExpr.sqrt(3) * 2
    assert parse_real("1/3 * sqrt2") == QuadExpr.sqrt(2) / 3


def test_parser_vector():
    v = parse_real_vector("sqrt2, 2*sqrt2, (1+sqrt2)/3")
    assert len(v) == 3
    assert v[1] == v[0] * 2


def test_parser_errors():
    for bad in ("", "sqrt", "1 +", "2 ** 3", "(1", "1/0", "1/sqrt2"):
        with pytest.raises(ParseError):
            parse_real(bad)
