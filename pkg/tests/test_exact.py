from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dahacm.exact import (
    ExactDivisionError,
    Jet,
    format_rational,
    jet_arith,
    jet_var,
    jet_vars,
    parse_rational,
    rat,
    rat_arith,
)
from dahacm.rng import RationalStream

from conftest import nonzero_rationals, rationals

F = Fraction


def test_rat_arith_examples():
    assert rat_arith(F(1, 2), F(1, 3), "add") == F(5, 6)
    z = rat_arith(F(2, 4), F(0), "mul")
    assert z == 0 and z.denominator == 1
    with pytest.raises(ExactDivisionError, match="division by zero"):
        rat_arith(F(1), F(0), "div")


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(ValueError):
        parse_rational("1.5")
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


@given(rationals)
def test_format_parse_round_trip(x):
    s = format_rational(x)
    assert parse_rational(s) == x
    assert ("/" in s) == (x.denominator != 1)


def test_field_laws_on_seeded_triples():
    s = RationalStream(2024)
    for _ in range(1000):
        a, b, c = s.rationals(3)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).denominator > 0


def test_jet_var_examples():
    j = jet_var([2, 3], 0)
    assert j.value == 2 and j.partials == (1, 0)
    j = jet_var([2, 3], 1)
    assert j.value == 3 and j.partials == (0, 1)
    with pytest.raises(IndexError):
        jet_var([2, 3], 5)


def test_jet_arith_examples():
    a, b = Jet(F(2), (F(1), F(0))), Jet(F(3), (F(0), F(1)))
    assert jet_arith(a, b, "mul") == Jet(F(6), (F(3), F(2)))
    assert jet_arith(a, a, "sub") == Jet(F(0), (F(0), F(0)))
    a, b = Jet(F(1), (F(1), F(0))), Jet(F(2), (F(0), F(1)))
    assert jet_arith(a, b, "div") == Jet(F(1, 2), (F(1, 2), F(-1, 4)))
    with pytest.raises(ExactDivisionError):
        jet_arith(a, Jet(F(0), (F(1), F(0))), "div")
    with pytest.raises(ValueError):
        Jet(F(1), (F(1),)) + Jet(F(1), (F(1), F(0)))


def _lagrange_linear_coefficient(points):
    """Coefficient of e^1 of the interpolating polynomial through (e_k, g_k)."""
    e = sympy.Symbol("e")
    poly = sympy.interpolate([(sympy.Rational(x.numerator, x.denominator), sympy.Rational(y.numerator, y.denominator))
                              for x, y in points], e)
    return F(str(sympy.Poly(poly, e).coeff_monomial(e)))


def _poly(v):
    x, y = v
    return x * x * y - 3 * x * y + y * y * y + 7


@given(rationals, rationals)
def test_jet_partials_match_interpolation_oracle(x, y):
    jet = _poly(jet_vars([x, y]))
    # degree 3 along each axis: 4 sample points pin the polynomial down
    for k in range(2):
        pts = []
        for eps in (F(0), F(1), F(-2), F(3, 5)):
            v = [x, y]
            v[k] += eps
            pts.append((eps, _poly(v) - _poly([x, y])))
        assert jet.partials[k] == _lagrange_linear_coefficient(pts)


@given(nonzero_rationals, rationals, rationals)
def test_jet_partials_match_symbolic_oracle(x, y, z):
    sx, sy, sz = sympy.symbols("x y z")
    expr = (sx * sy - sz) / (sx ** 2 + 1) + sy / sx

    def f(a, b, c):
        return (a * b - c) / (a * a + 1) + b / a

    jet = f(*jet_vars([x, y, z]))
    subs = {sx: sympy.Rational(x.numerator, x.denominator), sy: sympy.Rational(y.numerator, y.denominator),
            sz: sympy.Rational(z.numerator, z.denominator)}
    assert jet.value == F(str(expr.subs(subs)))
    for k, sym in enumerate((sx, sy, sz)):
        assert jet.partials[k] == F(str(sympy.diff(expr, sym).subs(subs)))


@given(nonzero_rationals, st.integers(-4, 4))
def test_jet_integer_power(x, k):
    j = jet_var([x], 0) ** k
    assert j.value == x ** k
    assert j.partials[0] == k * x ** (k - 1)
