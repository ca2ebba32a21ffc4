from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from conftest import polys, rationals
from jpineiro.exact import ONE, X, Poly, RatFunc, as_fraction, format_rational, poly_gcd, rational_roots

x = sympy.Symbol("x")


def to_sympy(p: Poly):
    return sum((sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def test_derivative_power_rule():
    assert (X**2).derivative() == Poly([0, 2])


def test_gcd_common_factor():
    assert poly_gcd(X**2 - 1, X - 1) == X - 1


def test_divmod_long_division():
    q, r = divmod(X**3, X - 1)
    assert q == X**2 + X + 1
    assert r == Poly([1])


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(X, Poly(()))
    with pytest.raises(ZeroDivisionError):
        poly_gcd(Poly(()), Poly(()))


def test_zero_polynomial_conventions():
    z = Poly([0, 0])
    assert z.coeffs == () and z.degree == -1 and z.is_zero()
    assert str(z) == "0"


def test_eval_and_shift():
    p = Poly([1, -3, 2])
    assert p(Fraction(1, 2)) == 0
    assert p.shift(1) == Poly([0, 1, 2])
    assert p.multiplicity_at(1) == 1
    assert ((X - 1) ** 3 * X).multiplicity_at(1) == 3


def test_rendering():
    assert str(X - Fraction(1, 2)) == "x - 1/2"
    assert str(Poly([0, -Fraction(3, 2), 1])) == "x^2 - 3/2*x"
    assert (X - Fraction(1, 2)).to_latex() == "x - \\frac{1}{2}"


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(ValueError):
        as_fraction("0.5")
    assert as_fraction("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(-1, 2)) == "-1/2" and format_rational(Fraction(4)) == "4"


def test_rational_roots():
    p = Poly.from_roots([0, 0, Fraction(3, 2), -4]) * (X**2 + 1)
    roots, rest = rational_roots(p)
    assert roots == [-4, 0, 0, Fraction(3, 2)]
    assert rest == X**2 + 1


@given(polys(), polys(nonzero=True))
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys(max_degree=4), polys(max_degree=4), polys(max_degree=2, nonzero=True))
def test_gcd_against_sympy(a, b, c):
    assume(not (a.is_zero() and b.is_zero()))
    g = poly_gcd(a * c, b * c)
    assert g.leading_coefficient == 1
    assert (a * c) % g == Poly(()) and (b * c) % g == Poly(())
    expected = sympy.Poly(sympy.gcd(to_sympy(a * c), to_sympy(b * c)), x).monic()
    assert to_sympy(g) == expected.as_expr()


@given(polys(), polys())
def test_ring_axioms(a, b):
    assert a * b == b * a
    assert (a + b) - b == a
    assert to_sympy(a * b).expand() == (to_sympy(a) * to_sympy(b)).expand()


@given(polys(), rationals)
def test_shift_against_evaluation(p, t):
    assert p.shift(t)(Fraction(1, 3)) == p(Fraction(1, 3) + t)


@given(polys())
def test_json_round_trip(p):
    assert Poly.from_json(p.to_json()) == p


# -- rational functions ----------------------------------------------------------


def test_ratfunc_normalization():
    f = RatFunc(X**2 - 1, 2 * X - 2)
    assert f.num == (X + 1) * Fraction(1, 2) and f.den == ONE
    assert f.is_polynomial()
    g = RatFunc(Poly([4]), X * (X - 1))
    assert str(g) == "4/(x*(x - 1))"


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFunc(X, Poly(()))


@given(polys(max_degree=3), polys(max_degree=3, nonzero=True), polys(max_degree=3), polys(max_degree=3, nonzero=True))
def test_ratfunc_arithmetic_against_sympy(a, b, c, d):
    f, g = RatFunc(a, b), RatFunc(c, d)
    for ours, theirs in (
        (f + g, to_sympy(a) / to_sympy(b) + to_sympy(c) / to_sympy(d)),
        (f * g, to_sympy(a) * to_sympy(c) / (to_sympy(b) * to_sympy(d))),
        (f.derivative(), sympy.diff(to_sympy(a) / to_sympy(b), x)),
    ):
        assert sympy.simplify(to_sympy(ours.num) / to_sympy(ours.den) - theirs) == 0
        assert ours.den.leading_coefficient == 1
        assert poly_gcd(ours.num, ours.den).degree == 0 if not ours.num.is_zero() else True


@given(polys(max_degree=3), polys(max_degree=3, nonzero=True))
def test_ratfunc_json_round_trip(a, b):
    f = RatFunc(a, b)
    assert RatFunc.from_json(f.to_json()) == f


@given(st.integers(min_value=-3, max_value=3))
def test_ratfunc_powers(n):
    f = RatFunc(X + 2, X - 1)
    assume(n != 0)
    g = f**n
    h = RatFunc(1)
    for _ in range(abs(n)):
        h = h * f if n > 0 else h / f
    assert g == h
