import pytest

from macwalk.expr import ParseError, parse_weight, parse_xpoly
from macwalk.ring import ParameterMap, format_xpoly

from strategies import RS


def test_weights():
    assert parse_weight("1,1", 2) == (1, 1)
    assert parse_weight("[-2]", 1) == (-2,)
    assert parse_weight("-2w1+w2", 2) == (-2, 1)
    assert parse_weight("2w", 1) == (2,)
    assert parse_weight("0", 3) == (0, 0, 0)
    for bad in ["1,2,3", "w5", "x"]:
        with pytest.raises(ParseError):
            parse_weight(bad, 2)


def test_arithmetic():
    a1 = RS["A1"]
    assert parse_xpoly("(1-t)^2", a1) == parse_xpoly("1 - 2 t + t^2", a1)
    assert parse_xpoly("t^{1/2} t^{1/2}", a1) == parse_xpoly("t", a1)
    assert parse_xpoly("X^{w} X^{-w}", a1) == parse_xpoly("1", a1)
    assert parse_xpoly("q(1-t)/(1-q t)*(1-q t)", a1) == parse_xpoly("q - q t", a1)
    with pytest.raises(ParseError):
        parse_xpoly("1/X^{w}", a1)
    with pytest.raises(ParseError):
        parse_xpoly("s", a1)


def test_orbit_parameters_and_printing_round_trip():
    b2 = RS["B2"]
    params = ParameterMap(b2, "orbit")
    p = parse_xpoly("m_{w1} + (1+t1+q t1+q t1^2)(1-t2)/(1-q t1^2 t2)", b2, params)
    again = parse_xpoly(format_xpoly(p, params.names, b2, True), b2, params)
    assert again == p
    assert len(p.terms) == 5
