"""Functions of the form p(x) * x**a * (x - 1)**b with rational a, b."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import ONE, X, X_MINUS_ONE, ZERO, Poly, RatFunc, as_fraction, format_rational


def _split_body(body: Poly) -> tuple[Poly, int, int]:
    """Strip factors x and (x - 1) from ``body``; return (rest, n_x, n_{x-1})."""
    nx = body.valuation()
    body = body.shift_down(nx)
    n1 = 0
    while body.degree > 0 and not body(1):
        body = body.exact_div(X_MINUS_ONE)
        n1 += 1
    return body, nx, n1


@dataclass(frozen=True, eq=True)
class TwistedFunction:
    """``body * x**exp_zero * (x - 1)**exp_one`` in canonical form.

    The body never vanishes at 0 or 1 (unless it is zero), so two equal
    functions have equal fields.
    """

    body: Poly
    exp_zero: Fraction = Fraction(0)
    exp_one: Fraction = Fraction(0)

    def __post_init__(self):
        body, a, b = self.body, as_fraction(self.exp_zero), as_fraction(self.exp_one)
        if not isinstance(body, Poly):
            body = Poly.constant(body)
        if body.is_zero():
            a = b = Fraction(0)
        else:
            body, nx, n1 = _split_body(body)
            a += nx
            b += n1
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "exp_zero", a)
        object.__setattr__(self, "exp_one", b)

    @classmethod
    def power(cls, exp_zero=0, exp_one=0, coeff=1) -> "TwistedFunction":
        return cls(Poly.constant(coeff), as_fraction(exp_zero), as_fraction(exp_one))

    @classmethod
    def from_poly(cls, p: Poly) -> "TwistedFunction":
        return cls(p)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def derivative(self, n: int = 1) -> "TwistedFunction":
        f = self
        for _ in range(n):
            if f.is_zero():
                return f
            a, b, p = f.exp_zero, f.exp_one, f.body
            # d/dx[p x^a (x-1)^b] = x^(a-1) (x-1)^(b-1) [x(x-1)p' + (a(x-1) + b x) p]
            inner = X * X_MINUS_ONE * p.derivative() + Poly((-a, a + b)) * p
            f = TwistedFunction(inner, a - 1, b - 1)
        return f

    def __mul__(self, other):
        if isinstance(other, TwistedFunction):
            return TwistedFunction(
                self.body * other.body,
                self.exp_zero + other.exp_zero,
                self.exp_one + other.exp_one,
            )
        if isinstance(other, Poly):
            return self * TwistedFunction(other)
        if isinstance(other, (int, Fraction)):
            return TwistedFunction(self.body * other, self.exp_zero, self.exp_one)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def _aligned(self, other: "TwistedFunction"):
        if other.is_zero():
            return self.body, ZERO, self.exp_zero, self.exp_one
        if self.is_zero():
            return ZERO, other.body, other.exp_zero, other.exp_one
        da = self.exp_zero - other.exp_zero
        db = self.exp_one - other.exp_one
        if da.denominator != 1 or db.denominator != 1:
            raise ValueError("exponents differ by a non-integer; sum is not twisted")
        a = min(self.exp_zero, other.exp_zero)
        b = min(self.exp_one, other.exp_one)
        p = self.body * X ** int(self.exp_zero - a) * X_MINUS_ONE ** int(self.exp_one - b)
        q = other.body * X ** int(other.exp_zero - a) * X_MINUS_ONE ** int(other.exp_one - b)
        return p, q, a, b

    def __add__(self, other):
        if isinstance(other, Poly):
            other = TwistedFunction(other)
        if not isinstance(other, TwistedFunction):
            return NotImplemented
        p, q, a, b = self._aligned(other)
        return TwistedFunction(p + q, a, b)

    def __sub__(self, other):
        if isinstance(other, Poly):
            other = TwistedFunction(other)
        if not isinstance(other, TwistedFunction):
            return NotImplemented
        return self + (-other)

    def inverse(self) -> "TwistedFunction":
        """1/f; only defined when the body is a nonzero constant."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        if self.body.degree > 0:
            raise ValueError("inverse of a twisted function with nonconstant body")
        return TwistedFunction(
            Poly.constant(1 / self.body.coeffs[0]), -self.exp_zero, -self.exp_one
        )

    def log_derivative(self) -> RatFunc:
        """f'/f, always a rational function."""
        if self.is_zero():
            raise ZeroDivisionError("logarithmic derivative of zero")
        return (
            RatFunc(self.body.derivative(), self.body)
            + RatFunc(Poly.constant(self.exp_zero), X)
            + RatFunc(Poly.constant(self.exp_one), X_MINUS_ONE)
        )

    def is_polynomial(self) -> bool:
        return self.is_zero() or all(
            e.denominator == 1 and e >= 0 for e in (self.exp_zero, self.exp_one)
        )

    def to_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        if self.is_zero():
            return self.body
        return self.body * X ** int(self.exp_zero) * X_MINUS_ONE ** int(self.exp_one)

    def to_ratfunc(self) -> RatFunc:
        a, b = self.exp_zero, self.exp_one
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError(f"{self} has non-integer exponents")
        num, den = self.body, ONE
        num = num * X ** int(a) if a >= 0 else num
        den = den * X ** int(-a) if a < 0 else den
        num = num * X_MINUS_ONE ** int(b) if b >= 0 else num
        den = den * X_MINUS_ONE ** int(-b) if b < 0 else den
        return RatFunc(num, den)

    @classmethod
    def from_ratfunc(cls, f: RatFunc) -> "TwistedFunction":
        """Inverse of :meth:`to_ratfunc`; the denominator must be x^i (x-1)^j."""
        if f.is_zero():
            return cls(Poly(()))
        rest, i, j = _split_body(f.den)
        if rest.degree > 0:
            raise ValueError(f"denominator of {f} has roots other than 0 and 1")
        return cls(f.num * (1 / rest.coeffs[0]), Fraction(-i), Fraction(-j))

    def __str__(self):
        parts = []
        if self.exp_zero:
            parts.append(f"x^({format_rational(self.exp_zero)})")
        if self.exp_one:
            parts.append(f"(x - 1)^({format_rational(self.exp_one)})")
        body = str(self.body)
        if not parts:
            return body
        if body == "1":
            return "*".join(parts)
        return f"({body})*" + "*".join(parts)

    def to_json(self) -> dict:
        return {
            "body": self.body.to_json(),
            "exp_zero": format_rational(self.exp_zero),
            "exp_one": format_rational(self.exp_one),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TwistedFunction":
        return cls(
            Poly.from_json(data["body"]),
            as_fraction(data["exp_zero"]),
            as_fraction(data["exp_one"]),
        )
