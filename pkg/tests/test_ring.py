from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.ring import Coef, PSeries, gens, parse_coef, ratfn_expand, residue_at, series_exp

G = gens(["u", "v", "w"])
u, v, w = G["u"], G["v"], G["w"]

small = st.integers(-4, 4)


@st.composite
def coefs(draw):
    num = draw(small) + draw(small) * u + draw(small) * u * v + draw(small) * w * w
    den = 1 + draw(st.integers(0, 3)) * v
    return Coef(num) / den


@given(coefs(), coefs(), coefs())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Coef(0)


@given(coefs(), coefs())
def test_division_inverts_multiplication(a, b):
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            a / b
    else:
        assert (a / b) * b == a


@given(coefs())
def test_canonical_string_round_trip(a):
    assert parse_coef(str(a)) == a
    assert str(parse_coef(str(a))) == str(a)


def test_rationals_and_fractions():
    assert Coef(Fraction(3, 6)) == Coef(1) / 2
    assert parse_coef("3/7 - 1/7*2") == Coef(Fraction(1, 7))
    assert str(Coef(0)) == "0"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_coef("u +* v")


def test_series_truncation_and_product():
    D = 4
    p1 = PSeries.var(D, 1)
    p3 = PSeries.var(D, 3)
    prod = p1 * p3
    assert prod.coefficient((("p", 1), ("p", 3))) == Coef(1)
    assert (p3 * p3).is_zero()
    with pytest.raises(ValueError):
        PSeries.var(3, 1) + PSeries.var(4, 1)


def test_series_exp_of_p1():
    D = 5
    e = series_exp(PSeries.var(D, 1))
    from math import factorial
    for k in range(D + 1):
        assert e.coefficient((("p", 1),) * k) == Coef(Fraction(1, factorial(k)))


def test_residue_simple_and_double_pole():
    z = gens(["z", "u"])["z"]
    a = gens(["z", "u"])["u"]
    f = 1 / ((z - a) * z)
    assert residue_at(f, a, "z") == 1 / a
    g = z / (z - a) ** 2
    assert residue_at(g, a, "z") == Coef(1)


def test_residue_against_sympy():
    sp = pytest.importorskip("sympy")
    z = gens(["z"])["z"]
    f = (z ** 2 + 3) / ((z - 2) ** 3 * (z + 1))
    zs = sp.Symbol("z")
    fs = (zs ** 2 + 3) / ((zs - 2) ** 3 * (zs + 1))
    for pole in (2, -1):
        want = sp.residue(fs, zs, pole)
        assert residue_at(f, Coef(pole), "z") == Coef(Fraction(str(want)))


def test_ratfn_expand_geometric():
    g = gens(["x", "y"])
    x = g["x"]
    got = ratfn_expand(1 / (1 - x), ["x", "y"], 3)
    assert got == 1 + x + x ** 2 + x ** 3
