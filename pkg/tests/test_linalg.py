from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import polys, rationals
from jpineiro.exact import X, Poly, RatFunc, TwistedFunction, rank, solve_linear, wronskian
from test_poly import to_sympy, x


def test_scalar_system():
    sol = solve_linear([[1]], [2])
    assert sol.unique and sol.particular == (2,)


def test_rank_deficient_kernel():
    sol = solve_linear([[1, 1], [1, 1]], [0, 0])
    assert sol.rank == 1
    assert sol.kernel == ((-1, 1),)


def test_identity_system():
    assert solve_linear([[1, 0], [0, 1]], [3, 4]).particular == (3, 4)


def test_inconsistent_system_is_reported():
    sol = solve_linear([[1, 1], [1, 1]], [0, 1])
    assert not sol.consistent and sol.particular is None


matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.tuples(
            st.lists(st.lists(rationals, min_size=m, max_size=m), min_size=n, max_size=n),
            st.lists(rationals, min_size=n, max_size=n),
        )
    )
)


@given(matrices)
def test_solutions_reproduce_rhs(data):
    A, b = data
    sol = solve_linear(A, b)
    expected_rank = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in A]).rank()
    assert sol.rank == expected_rank == rank(A)
    if sol.consistent:
        for row, rhs in zip(A, b):
            assert sum(a * v for a, v in zip(row, sol.particular)) == rhs
    for vec in sol.kernel:
        for row in A:
            assert sum(a * v for a, v in zip(row, vec)) == 0
    assert len(sol.kernel) == len(A[0]) - sol.rank


def test_wronskian_examples():
    assert wronskian([Poly([1]), X]) == Poly([1])
    assert wronskian([X**2, X**5]) == 3 * X**6
    f = X**3 - 2
    assert wronskian([f]) == f


@given(st.lists(polys(max_degree=4), min_size=2, max_size=4))
def test_wronskian_alternating_and_against_sympy(fs):
    w = wronskian(fs)
    swapped = [fs[1], fs[0]] + fs[2:]
    assert wronskian(swapped) == -w
    assert wronskian([fs[0], fs[0]] + fs[2:]).is_zero()
    expected = sympy.wronskian([to_sympy(f) for f in fs], x)
    assert sympy.expand(to_sympy(w) - expected) == 0


def test_wronskian_of_rational_functions():
    f, g = RatFunc(1, X), RatFunc(X, X - 1)
    w = wronskian([f, g])
    assert w == f * g.derivative() - f.derivative() * g


def test_twisted_wronskian():
    a = Fraction(1, 2)
    t = Fraction(1, 3)
    fs = [TwistedFunction.power(a, t), TwistedFunction(X + 1, a - 2, t + 1)]
    w = wronskian(fs)
    half, third = sympy.Rational(1, 2), sympy.Rational(1, 3)
    sym = [x**half * (x - 1) ** third, (x + 1) * x ** (half - 2) * (x - 1) ** (third + 1)]
    expected = sympy.wronskian(sym, x)
    ours = to_sympy(w.body) * x ** sympy.Rational(w.exp_zero.numerator, w.exp_zero.denominator) * (x - 1) ** sympy.Rational(
        w.exp_one.numerator, w.exp_one.denominator
    )
    assert sympy.simplify(ours - expected) == 0


def test_twisted_wronskian_needs_common_twist():
    with pytest.raises(ValueError):
        wronskian([TwistedFunction.power(Fraction(1, 2), 0), TwistedFunction.power(0, 0)])
