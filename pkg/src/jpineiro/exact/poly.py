"""Dense univariate polynomials and rational functions over the rationals.

Coefficients are stored lowest degree first as :class:`fractions.Fraction`.
Both classes are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, isqrt
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction (no floats)."""
    if type(value) is Fraction:
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Polynomial in one variable with rational coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([as_fraction(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        # coeffs already Fractions with no trailing zeros
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Poly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Poly":
        p = ONE
        for root in roots:
            p = p * cls((-as_fraction(root), 1))
        return p

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def valuation(self) -> int:
        """Order of vanishing at x = 0; raises for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of the zero polynomial")

    def multiplicity_at(self, point: Scalar) -> int:
        """Order of vanishing at ``point``."""
        return self.shift(point).valuation()

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly._raw(tuple(c / lc for c in self.coeffs))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.constant(other)
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.constant(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return ZERO
            out = [_ZERO] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if not ca:
                    continue
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
            return Poly._raw(_strip(out))
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly._raw(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lc = other.coeffs[-1]
        if len(rem) <= db:
            return ZERO, self
        quot = [_ZERO] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = c / lc
            quot[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] -= q * bc[j]
        return Poly._raw(_strip(quot)), Poly._raw(_strip(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, rem = divmod(self, other)
        if not rem.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derivative(self, n: int = 1) -> "Poly":
        coeffs = self.coeffs
        for _ in range(n):
            coeffs = tuple(i * c for i, c in enumerate(coeffs) if i)
        return Poly._raw(coeffs)

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a: Scalar) -> "Poly":
        """Return p(x + a) (Taylor shift)."""
        a = as_fraction(a)
        if not a:
            return self
        n = len(self.coeffs)
        out = [_ZERO] * n
        powers = [_ONE]
        for _ in range(n):
            powers.append(powers[-1] * a)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j in range(i + 1):
                out[j] += c * comb(i, j) * powers[i - j]
        return Poly._raw(_strip(out))

    def shift_down(self, n: int) -> "Poly":
        """Divide by x**n, which must divide exactly."""
        if any(self.coeffs[:n]):
            raise ArithmeticError(f"x^{n} does not divide {self}")
        return Poly._raw(self.coeffs[n:])

    def shift_up(self, n: int) -> "Poly":
        if not self.coeffs or not n:
            return self
        return Poly._raw((_ZERO,) * n + self.coeffs)

    def primitive_integer(self) -> tuple[int, ...]:
        """Integer coefficients with content 1 and positive leading term."""
        if not self.coeffs:
            return ()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return tuple(ints)

    # -- comparison / display -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if i == 0:
                body = format_rational(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_latex(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if out:
                out += " - " if c < 0 else " + "
            elif c < 0:
                out += "-"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{{{i}}}")
            if mag == 1 and mono:
                out += mono
            else:
                out += latex_rational(mag) + (" " + mono if mono else "")
        return out

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(as_fraction(c) for c in data)


def latex_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


ZERO = Poly._raw(())
ONE = Poly._raw((_ONE,))
X = Poly._raw((_ZERO, _ONE))
X_MINUS_ONE = Poly._raw((-_ONE, _ONE))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is an error."""
    if a.is_zero() and b.is_zero():
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Poly) -> tuple[list[Fraction], Poly]:
    """Rational roots with multiplicity (sorted), and the root-free cofactor.

    The cofactor is monic and has no rational roots.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    roots: list[Fraction] = []
    v = p.valuation()
    roots.extend([_ZERO] * v)
    rest = p.shift_down(v).monic()
    while rest.degree > 0:
        ints = rest.primitive_integer()
        found = None
        for q in _divisors(ints[-1]):
            for num in _divisors(ints[0]):
                for cand in (Fraction(num, q), Fraction(-num, q)):
                    if not rest(cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        rest = rest.exact_div(Poly((-found, 1)))
    return sorted(roots), rest


class RatFunc:
    """Reduced quotient num/den of polynomials with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        if den is None:
            den = ONE
        elif not isinstance(den, Poly):
            den = Poly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.leading_coefficient
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def coerce(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return cls._raw(value, ONE)
        return cls._raw(Poly.constant(value), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            if self.den.degree == 0:
                return RatFunc._raw(self.num + other.num, ONE)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc._raw(ZERO, ONE)
            return RatFunc._raw(self.num * other, self.den)
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFunc._raw(self.num * other.num, ONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("rational function division by zero")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n >= 0:
            return RatFunc._raw(self.num ** n, self.den ** n)
        return RatFunc(self.den ** (-n), self.num ** (-n))

    def derivative(self, n: int = 1) -> "RatFunc":
        out = self
        for _ in range(n):
            if out.den.degree == 0:
                out = RatFunc._raw(out.num.derivative(), ONE)
            else:
                out = RatFunc(
                    out.num.derivative() * out.den - out.num * out.den.derivative(),
                    out.den * out.den,
                )
        return out

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def shift(self, a: Scalar) -> "RatFunc":
        """Return f(x + a)."""
        num, den = self.num.shift(a), self.den.shift(a)
        return RatFunc._raw(num, den)

    def valuation(self) -> int:
        """Order at x = 0 (negative for a pole)."""
        return self.num.valuation() - self.den.valuation()

    def degree(self) -> int:
        """Degree at infinity: deg(num) - deg(den)."""
        return self.num.degree - self.den.degree

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatFunc", self.num.coeffs, self.den.coeffs))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        num = str(self.num)
        if sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        return f"{num}/{_den_str(self.den)}"

    def to_latex(self) -> str:
        if self.den.degree == 0:
            return self.num.to_latex()
        return f"\\frac{{{self.num.to_latex()}}}{{{self.den.to_latex()}}}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(Poly.from_json(data["num"]), Poly.from_json(data["den"]))


def _den_str(den: Poly) -> str:
    """Monic denominator as x^i*(x - 1)^j when it has that form."""
    i = den.valuation()
    rest = den.shift_down(i)
    j = 0
    while rest.degree > 0 and not rest(1):
        rest = rest.exact_div(X_MINUS_ONE)
        j += 1
    if rest.degree > 0:
        return f"({den})"
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("(x - 1)" if j == 1 else f"(x - 1)^{j}")
    text = "*".join(parts)
    return f"({text})" if len(parts) > 1 else text


def _coerce_or_none(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc._raw(value, ONE)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return RatFunc._raw(Poly.constant(value), ONE)
    return None
