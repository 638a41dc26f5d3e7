import pytest

from shapwa.rational import Rat, format_rat, parse_rat, rat


def test_arithmetic_closure():
    assert Rat(1, 3) + Rat(1, 6) == Rat(1, 2)
    assert Rat(2, 4) == Rat(1, 2)
    assert Rat(1, 3) * 3 == 1
    assert Rat(7, 2) / Rat(7, 2) == 1


def test_format_parse_roundtrip():
    for x in (Rat(0), Rat(5), Rat(-3, 7), Rat(22, 4)):
        assert parse_rat(format_rat(x)) == x


def test_parse_integer_strings():
    assert parse_rat("4") == 4
    assert parse_rat("-4") == -4
    assert parse_rat("3/6") == Rat(1, 2)


def test_floats_rejected():
    with pytest.raises((TypeError, ValueError)):
        rat(0.5)
    with pytest.raises((TypeError, ValueError)):
        parse_rat(0.5)
    with pytest.raises((TypeError, ValueError)):
        parse_rat(True)
