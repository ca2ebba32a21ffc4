"""Linear differential operators with rational-function coefficients.

An operator is stored in the normal form ``sum_i c_i(x) (d/dx)^i``
(derivatives on the right), so equality is coefficient-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Literal

from .exact import ONE, X, Poly, RatFunc, TwistedFunction, nullspace, poly_lcm, rational_roots, rref

Point = Literal[0, 1, "infinity"]


class IrregularSingularity(ValueError):
    """Raised when an indicial polynomial is requested at a non-Fuchsian point."""


def _falling(n: int) -> Poly:
    """alpha (alpha - 1) ... (alpha - n + 1) as a polynomial in alpha."""
    p = ONE
    for j in range(n):
        p = p * Poly((-j, 1))
    return p


class DiffOperator:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [RatFunc.coerce(c) for c in coeffs]
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        if not cs:
            cs = [RatFunc(0)]
        self.coeffs: tuple[RatFunc, ...] = tuple(cs)

    @classmethod
    def d(cls, n: int = 1) -> "DiffOperator":
        return cls([0] * n + [1])

    @classmethod
    def multiplication(cls, c) -> "DiffOperator":
        return cls([c])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> RatFunc:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.order == 0 and self.coeffs[0].is_zero()

    def monic(self) -> "DiffOperator":
        lc = self.leading_coefficient
        return DiffOperator(c / lc for c in self.coeffs)

    # -- action --------------------------------------------------------

    def apply(self, f):
        """Apply to a Poly or RatFunc (result: RatFunc) or a TwistedFunction.

        For twisted input the result is a TwistedFunction, which requires
        the coefficients' denominators to be of the form x^i (x-1)^j.
        """
        if isinstance(f, TwistedFunction):
            return self._apply_twisted(f)
        f = RatFunc.coerce(f)
        if all(c.is_polynomial() for c in self.coeffs) and f.is_polynomial():
            p = f.num
            acc = Poly(())
            for c in self.coeffs:
                if not c.is_zero():
                    acc = acc + c.num * p
                p = p.derivative()
                if p.is_zero():
                    break
            return RatFunc.coerce(acc)
        acc = RatFunc(0)
        g = f
        for c in self.coeffs:
            if not c.is_zero():
                acc = acc + c * g
            g = g.derivative()
        return acc

    def _apply_twisted(self, f: TwistedFunction) -> TwistedFunction:
        if f.is_zero():
            return f
        h = TwistedFunction.power(f.exp_zero, f.exp_one)
        h_inv = h.inverse()
        acc = RatFunc(0)
        g = f
        for c in self.coeffs:
            if not c.is_zero():
                acc = acc + c * (g * h_inv).to_ratfunc()
            g = g.derivative()
        return TwistedFunction.from_ratfunc(acc) * h

    __call__ = apply

    # -- algebra -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffOperator):
            other = DiffOperator.multiplication(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = RatFunc(0)
        return DiffOperator(
            (self.coeffs[i] if i < len(self.coeffs) else zero)
            + (other.coeffs[i] if i < len(other.coeffs) else zero)
            for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, DiffOperator):
            other = DiffOperator.multiplication(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Composition ``self ∘ other``; a function operand acts by multiplication."""
        if isinstance(other, DiffOperator):
            return compose(self, other)
        if isinstance(other, (int, Fraction)):
            return DiffOperator(c * other for c in self.coeffs)
        return compose(self, DiffOperator.multiplication(other))

    def __rmul__(self, other):
        # c * L is the operator c(x) L
        return DiffOperator(RatFunc.coerce(other) * c for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("DiffOperator", self.coeffs))

    def __repr__(self):
        return f"DiffOperator({list(self.coeffs)!r})"

    def __str__(self):
        terms = []
        for i in range(self.order, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            dpart = "" if i == 0 else ("d/dx" if i == 1 else f"d^{i}/dx^{i}")
            cs = str(c)
            if not dpart:
                terms.append(f"({cs})" if " " in cs else cs)
            elif cs == "1":
                terms.append(dpart)
            else:
                terms.append(f"({cs})*{dpart}")
        return " + ".join(terms) if terms else "0"

    def to_latex(self) -> str:
        terms = []
        for i in range(self.order, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            dpart = "" if i == 0 else ("\\frac{d}{dx}" if i == 1 else f"\\frac{{d^{{{i}}}}}{{dx^{{{i}}}}}")
            cs = c.to_latex()
            if cs == "1" and dpart:
                terms.append(dpart)
            else:
                terms.append(f"\\left({cs}\\right){dpart}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list[dict]) -> "DiffOperator":
        return cls(RatFunc.from_json(c) for c in data)


def compose(left: DiffOperator, right: DiffOperator) -> DiffOperator:
    """left ∘ right, re-expanded with the Leibniz rule."""
    out: list[RatFunc] = [RatFunc(0)] * (left.order + right.order + 1)
    # derivatives of right's coefficients, cached by order
    derivs = [list(right.coeffs)]
    for i, a in enumerate(left.coeffs):
        if a.is_zero():
            continue
        while len(derivs) <= i:
            derivs.append([c.derivative() for c in derivs[-1]])
        # a D^i b_j D^j = a sum_t C(i,t) b_j^(t) D^(i-t+j)
        for t in range(i + 1):
            binom = comb(i, t)
            for j, b in enumerate(derivs[t]):
                if b.is_zero():
                    continue
                out[i - t + j] = out[i - t + j] + a * b * binom
    return DiffOperator(out)


def formal_adjoint(op: DiffOperator) -> DiffOperator:
    """sum_i (-1)^i D^i ∘ c_i, in normal form."""
    out: list[RatFunc] = [RatFunc(0)] * (op.order + 1)
    for i, c in enumerate(op.coeffs):
        if c.is_zero():
            continue
        sign = -1 if i % 2 else 1
        deriv = c
        for t in range(i + 1):
            if t:
                deriv = deriv.derivative()
            if not deriv.is_zero():
                out[i - t] = out[i - t] + deriv * (sign * comb(i, t))
    return DiffOperator(out)


def gauge_conjugate(op: DiffOperator, g: TwistedFunction) -> DiffOperator:
    """g ∘ op ∘ g^{-1}; uses g ∘ D ∘ g^{-1} = D - g'/g."""
    if g.is_zero():
        raise ZeroDivisionError("gauge by the zero function")
    shifted = DiffOperator([-g.log_derivative(), 1])
    out = DiffOperator.multiplication(op.coeffs[0])
    power = DiffOperator.multiplication(1)
    for c in op.coeffs[1:]:
        power = compose(shifted, power)
        if not c.is_zero():
            out = out + c * power
    return out


@dataclass(frozen=True)
class IndicialData:
    """Indicial polynomial at a point, its rational roots and the leftover factor."""

    point: object
    polynomial: Poly
    roots: tuple[Fraction, ...]
    irrational_factor: Poly


def indicial_polynomial(op: DiffOperator, point: Point) -> Poly:
    """Characteristic polynomial in alpha for solutions ~ (x - point)^alpha.

    At infinity the convention is solutions ~ x^alpha, so polynomial
    solutions of degree n contribute the exponent n.
    """
    n = op.order
    if n == 0:
        raise ValueError("order-zero operators have no exponents")
    lead = op.leading_coefficient
    result = Poly(())
    for i, c in enumerate(op.coeffs):
        q = c / lead
        if q.is_zero():
            continue
        if point == "infinity":
            deg = q.degree()
            if deg > -(n - i):
                raise IrregularSingularity(f"irregular singularity at infinity (coefficient {i})")
            gamma = q.num.leading_coefficient / q.den.leading_coefficient if deg == -(n - i) else 0
        else:
            if point not in (0, 1):
                raise ValueError(f"unsupported point {point!r}")
            if point == 1:
                q = q.shift(1)
            vn, vd = q.num.valuation(), q.den.valuation()
            if vn - vd < -(n - i):
                raise IrregularSingularity(f"irregular singularity at {point} (coefficient {i})")
            gamma = q.num.coeffs[vn] / q.den.coeffs[vd] if vn - vd == -(n - i) else 0
        if gamma:
            result = result + _falling(i) * gamma
    return result


def indicial_roots(op: DiffOperator, point: Point) -> IndicialData:
    poly = indicial_polynomial(op, point)
    roots, rest = rational_roots(poly)
    return IndicialData(point=point, polynomial=poly, roots=tuple(roots), irrational_factor=rest)


def echelon_by_valuation(polys: Iterable[Poly]) -> list[Poly]:
    """Basis of the span with distinct valuations; each lowest coefficient is 1."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    width = max(p.degree for p in polys) + 1
    rows, _ = rref([[p.coeff(j) for j in range(width)] for p in polys])
    return [Poly(row) for row in rows]


def cleared_coefficients(op: DiffOperator) -> tuple[list[Poly], Poly]:
    """Polynomials P_i and a monic Q with c_i = P_i / Q for every coefficient."""
    common = ONE
    for c in op.coeffs:
        if c.den.degree > 0:
            common = poly_lcm(common, c.den)
    return [c.num * common.exact_div(c.den) for c in op.coeffs], common


def polynomial_kernel(op: DiffOperator, degree_bound: int) -> list[Poly]:
    """Basis of {p : deg p <= degree_bound, op(p) = 0}, echelonized by valuation."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    polys, _ = cleared_coefficients(op)
    cols = []
    for j in range(degree_bound + 1):
        f = Poly.monomial(j)
        acc = Poly(())
        for c in polys:
            if f.is_zero():
                break
            if not c.is_zero():
                acc = acc + c * f
            f = f.derivative()
        cols.append(acc)
    height = max(c.degree for c in cols) + 1
    if height == 0:
        return [Poly.monomial(j) for j in range(degree_bound + 1)]
    matrix = [[c.coeff(row) for c in cols] for row in range(height)]
    basis = nullspace(matrix, ncols=degree_bound + 1)
    return echelon_by_valuation(Poly(v) for v in basis)


D = DiffOperator.d()
"""The derivation d/dx."""

XOP = DiffOperator.multiplication(X)
