from fractions import Fraction as F

import pytest

from reswitch import ModelFormatError, format_fixed, parse_rational, round_half_away


def test_parse_forms():
    assert parse_rational("3/2") == F(3, 2)
    assert parse_rational("1.25") == F(5, 4)
    assert parse_rational("7") == 7
    assert parse_rational("-0.5") == F(-1, 2)
    assert parse_rational(" 100/3 ") == F(100, 3)


def test_parse_rejects_garbage():
    with pytest.raises(ModelFormatError):
        parse_rational("seven")
    with pytest.raises(ModelFormatError):
        parse_rational("1/0")


def test_half_away_from_zero():
    assert round_half_away(F(354375, 10000), 2) == F(3544, 100)  # 35.4375 -> 35.44
    assert round_half_away(F(2121875, 100000), 2) == F(2122, 100)  # 21.21875 -> 21.22
    assert round_half_away(F(5, 2), 0) == 3
    assert round_half_away(F(-5, 2), 0) == -3
    assert round_half_away(F(1, 3), 2) == F(33, 100)


def test_format_fixed_padding():
    assert format_fixed(F(7), 2) == "7.00"
    assert format_fixed(F(354375, 10000), 2) == "35.44"
    assert format_fixed(F(1, 8), 3) == "0.125"
    assert format_fixed(F(-1, 8), 2) == "-0.13"
    assert format_fixed(F(8, 7) * 100, 2) == "114.29"
    assert format_fixed(F(3), 0) == "3"
