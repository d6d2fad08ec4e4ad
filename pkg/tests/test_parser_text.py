from fractions import Fraction

import pytest

from wahlrank.engine.parser import format_poly, parse_poly
from wahlrank.engine.polyring import ZERO, BiPoly
from wahlrank.errors import ParseError, WahlRankError


def test_parse_fermat_sextic():
    p = parse_poly("x^6 + y^6 + 1")

    assert p == BiPoly({(6, 0): 1, (0, 6): 1, (0, 0): 1})


def test_parse_rational_coefficient_with_implicit_product():
    p = parse_poly("-3/2 x y^2")

    assert p == BiPoly({(1, 2): Fraction(-3, 2)})


def test_parse_explicit_products_and_repeated_factors():
    assert parse_poly("2*x*y - y^3") == BiPoly({(1, 1): 2, (0, 3): -1})
    assert parse_poly("3 x^2y") == BiPoly({(2, 1): 3})
    assert parse_poly("x*x*y") == BiPoly({(2, 1): 1})
    assert parse_poly("x + x") == BiPoly({(1, 0): 2})
    assert parse_poly("  7  ") == BiPoly.const(7)
    assert parse_poly("x - x") == ZERO


def test_missing_exponent_reports_offset():
    with pytest.raises(ParseError) as info:
        parse_poly("x^")

    assert info.value.position == 2
    assert info.value.expected == "exponent"
    assert "offset 2" in str(info.value)


def test_empty_and_dangling_sign():
    with pytest.raises(ParseError) as info:
        parse_poly("")
    assert info.value.position == 0

    with pytest.raises(ParseError) as info:
        parse_poly("x + + y")
    assert info.value.position == 4


def test_zero_denominator_and_unknown_symbol():
    with pytest.raises(ParseError) as info:
        parse_poly("1/0 x")
    assert info.value.position == 2
    assert info.value.expected == "nonzero denominator"

    with pytest.raises(ParseError) as info:
        parse_poly("x + z")
    assert info.value.position == 4


def test_parse_error_is_a_package_error():
    with pytest.raises(WahlRankError):
        parse_poly("x ^ ^")


def test_format_canonical_text():
    assert format_poly(parse_poly("1 + y^6 + x^6")) == "x^6 + y^6 + 1"
    assert format_poly(parse_poly("-3/2 x y^2")) == "-3/2*x*y^2"
    assert format_poly(parse_poly("y - 3/2 x^2 y + 1")) == "-3/2*x^2*y + y + 1"
    assert format_poly(ZERO) == "0"
    assert format_poly(BiPoly.const(-1)) == "-1"


@pytest.mark.parametrize(
    "text",
    [
        "x^6 + y^6 + 1",
        "-3/2 x y^2 + 5",
        "y^4 + x^3 y + 2 x + 1",
        "1/7 x^2 y^3 - x y + 0",
    ],
)
def test_format_then_parse_is_identity(text):
    p = parse_poly(text)
    printed = format_poly(p)

    assert parse_poly(printed) == p
    assert format_poly(parse_poly(printed)) == printed
