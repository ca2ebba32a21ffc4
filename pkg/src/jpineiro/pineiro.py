"""Jacobi-Piñeiro polynomials, their spaces V and U, and the annihilating operators.

Conventions: ``l_0 = k`` and ``l_{r+1} = 0``.  Indices in docstrings follow
the usual 1-based numbering of ``m`` and ``l``.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .diffop import DiffOperator, formal_adjoint, gauge_conjugate
from .exact import (
    ONE,
    X,
    X_MINUS_ONE,
    Poly,
    RatFunc,
    TwistedFunction,
    as_fraction,
    format_rational,
    nullspace,
    rank,
    rref,
    solve_linear,
    wronskian,
)

log = logging.getLogger(__name__)


class DegenerateParameters(ValueError):
    """The construction is undefined at these (non-generic) parameters."""

    def __init__(self, message: str, params: "ParameterSet | None" = None):
        super().__init__(f"{message} [{params}]" if params is not None else message)
        self.params = params


class InconsistentParameters(ValueError):
    pass


class ShapeError(ValueError):
    """A basis does not have the prescribed valuation/degree shape."""


def _is_nonneg_int(q: Fraction) -> bool:
    return q.denominator == 1 and q >= 0


@dataclass(frozen=True)
class ParameterSet:
    m: tuple[Fraction, ...]
    l: tuple[int, ...]
    k: Fraction

    def __post_init__(self):
        m = tuple(as_fraction(v) for v in self.m)
        l = tuple(self.l)
        for v in l:
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"l must be nonnegative integers, got {self.l}")
        l = tuple(int(v) for v in l)
        if not m:
            raise ValueError("r must be positive")
        if len(l) != len(m):
            raise ValueError(f"len(m) = {len(m)} but len(l) = {len(l)}")
        if any(a < b for a, b in zip(l, l[1:])):
            raise ValueError(f"l must be nonincreasing, got {l}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "k", as_fraction(self.k))

    @classmethod
    def of(cls, m: Sequence, l: Sequence[int], k) -> "ParameterSet":
        return cls(tuple(m), tuple(l), k)

    @property
    def r(self) -> int:
        return len(self.m)

    def l_at(self, i: int):
        """l_i for i = 0..r+1 with l_0 = k and l_{r+1} = 0."""
        if i == 0:
            return self.k
        if i == self.r + 1:
            return 0
        if 1 <= i <= self.r:
            return self.l[i - 1]
        raise IndexError(i)

    def m_at(self, s: int) -> Fraction:
        return self.m[s - 1]

    def m_sum(self, lo: int, hi: int) -> Fraction:
        """sum_{s=lo}^{hi} m_s (empty sums are zero)."""
        return sum((self.m[s - 1] for s in range(max(lo, 1), hi + 1)), Fraction(0))

    @property
    def consistent(self) -> bool:
        if not (_is_nonneg_int(self.k) and all(_is_nonneg_int(v) for v in self.m)):
            return False
        if self.k < self.l[0]:
            return False
        return all(self.l_at(s) - self.l_at(s + 1) <= self.m_at(s) for s in range(1, self.r + 1))

    def with_l(self, l: Sequence[int], k) -> "ParameterSet":
        return ParameterSet(self.m, tuple(l), k)

    def __str__(self):
        m = ",".join(format_rational(v) for v in self.m)
        l = ",".join(str(v) for v in self.l)
        return f"r={self.r} m=({m}) l=({l}) k={format_rational(self.k)}"

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": [format_rational(v) for v in self.m],
            "l": list(self.l),
            "k": format_rational(self.k),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParameterSet":
        p = cls(tuple(as_fraction(v) for v in data["m"]), tuple(data["l"]), as_fraction(data["k"]))
        if "r" in data and data["r"] != p.r:
            raise ValueError("r does not match the length of m")
        return p


# -- exponent data --------------------------------------------------------


def falling_factorial_coeffs(f: Poly) -> tuple[Fraction, ...]:
    """(F_0, ..., F_n) with f(a) = sum_i F_i a(a-1)...(a-i+1), via forward differences."""
    if f.is_zero():
        return ()
    values = [f(j) for j in range(f.degree + 1)]
    out = []
    fact = 1
    for i in range(f.degree + 1):
        if i:
            fact *= i
        out.append(values[0] / fact)
        values = [b - a for a, b in zip(values, values[1:])]
    return tuple(out)


def from_falling_factorial(coeffs: Sequence) -> Poly:
    """Inverse of :func:`falling_factorial_coeffs`."""
    out = Poly(())
    basis = ONE
    for i, c in enumerate(coeffs):
        if i:
            basis = basis * Poly((-(i - 1), 1))
        out = out + basis * as_fraction(c)
    return out


@dataclass(frozen=True)
class ExponentData:
    d: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    A: tuple[Fraction, ...]
    B: tuple[Fraction, ...]
    e: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {name: [format_rational(v) for v in getattr(self, name)] for name in ("d", "a", "A", "B", "e")}

    @classmethod
    def from_json(cls, data: dict) -> "ExponentData":
        return cls(**{name: tuple(as_fraction(v) for v in data[name]) for name in ("d", "a", "A", "B", "e")})


def exponent_data(p: ParameterSet) -> ExponentData:
    r = p.r
    d = tuple(p.m_sum(r + 1 - i, r) - p.l_at(r - i + 1) + p.l_at(r - i) + i for i in range(r + 1))
    a = tuple(p.m_sum(r + 1 - i, r) + i for i in range(r + 1))
    e = tuple(p.m_sum(1, i) + i for i in range(r + 1))
    A = falling_factorial_coeffs(Poly.from_roots(d))
    B = falling_factorial_coeffs(Poly.from_roots(a))
    return ExponentData(d=d, a=a, A=A, B=B, e=e)


def exponents_at_infinity(p: ParameterSet) -> tuple[Fraction, ...]:
    """k + sum_{s<=i} m_s - l_i + l_{i+1} + i for i = 0..r (degrees of the V basis)."""
    return tuple(p.k + p.m_sum(1, i) - p.l_at(i) + p.l_at(i + 1) + i for i in range(p.r + 1))


# -- step and product operators ----------------------------------------


def _step_constant(p: ParameterSet, i: int) -> Fraction:
    return p.k + p.m_sum(1, i) - p.l_at(i) + p.l_at(i + 1) + i


def step_operator(p: ParameterSet, i: int) -> DiffOperator:
    """x(x-1) d/dx - (k + sum_{s<=i} m_s - l_i + l_{i+1} + i)(x-1) - k - 1."""
    if not 0 <= i <= p.r:
        raise IndexError(f"step index {i} outside 0..{p.r}")
    c = _step_constant(p, i)
    return DiffOperator([Poly((c - p.k - 1, -c)), X * X_MINUS_ONE])


def _apply_step(p: ParameterSet, i: int, f: Poly) -> Poly:
    c = _step_constant(p, i)
    return X * X_MINUS_ONE * f.derivative() + Poly((c - p.k - 1, -c)) * f


def canonical_ordering(p: ParameterSet) -> tuple[int, ...]:
    """i-steps in increasing i, then the k - l_1 zero-steps."""
    seq: list[int] = []
    for i in range(1, p.r + 1):
        seq.extend([i] * (p.l_at(i) - p.l_at(i + 1)))
    seq.extend([0] * int(p.k - p.l[0]))
    return tuple(seq)


def validate_ordering(p: ParameterSet, ordering: Sequence[int]) -> tuple[int, ...]:
    if not p.consistent:
        raise InconsistentParameters(f"parameters are not consistent: {p}")
    ordering = tuple(int(i) for i in ordering)
    if len(ordering) != p.k:
        raise ValueError(f"ordering must have length k = {p.k}, got {len(ordering)}")
    for i in range(p.r + 1):
        want = int(p.k - p.l[0]) if i == 0 else p.l_at(i) - p.l_at(i + 1)
        if ordering.count(i) != want:
            raise ValueError(f"index {i} must occur {want} times in the ordering {ordering}")
    if any(not 0 <= i <= p.r for i in ordering):
        raise ValueError(f"ordering entries must lie in 0..{p.r}")
    return ordering


def _intermediate(p: ParameterSet, ordering: Sequence[int]):
    """Yield (parameters before step j, step index) along the ordering."""
    l = [0] * p.r
    for j, i in enumerate(ordering):
        yield ParameterSet(p.m, tuple(l), j), i
        for s in range(i):
            l[s] += 1


def product_operator(p: ParameterSet, ordering: Sequence[int] | None = None) -> DiffOperator:
    """Order-k composition of step operators walking from (m, 0, 0) to (m, l, k)."""
    ordering = validate_ordering(p, canonical_ordering(p) if ordering is None else ordering)
    op = DiffOperator.multiplication(1)
    for q, i in _intermediate(p, ordering):
        op = step_operator(q, i) * op
    return op


def v0_via_recursion(p: ParameterSet, ordering: Sequence[int] | None = None) -> Poly:
    """Monic degree-l_1 polynomial obtained by applying the product operator to 1."""
    ordering = validate_ordering(p, canonical_ordering(p) if ordering is None else ordering)
    f = ONE
    for q, i in _intermediate(p, ordering):
        f = _apply_step(q, i, f)
    if f.degree != p.l[0]:
        raise DegenerateParameters(f"recursion produced degree {f.degree}, expected {p.l[0]}", p)
    return f.monic()


# -- Rodrigues formula ---------------------------------------------------


@functools.cache
def _note_rodrigues_prefactor() -> None:
    log.info(
        "rodrigues: using prefactor x^(sum m + r); the printed exponent sum m - r "
        "does not give a polynomial of degree l_1"
    )


def rodrigues(p: ParameterSet) -> Poly:
    """Nested Rodrigues-type construction, normalized monic.

    Innermost function x^(n_1 - m_1 - 1) (x-1)^(l_1 - k - 1) with n_s = l_s - l_{s+1};
    alternately differentiate n_s times and multiply by x^(n_{s+1} - m_{s+1} - 1);
    finally multiply by (x-1)^(k+1) x^(m_1 + ... + m_r + r).
    """
    _note_rodrigues_prefactor()
    r = p.r
    n = [p.l_at(s) - p.l_at(s + 1) for s in range(1, r + 1)]
    f = TwistedFunction.power(n[0] - p.m[0] - 1, p.l[0] - p.k - 1)
    for s in range(1, r + 1):
        if s > 1:
            f = f * TwistedFunction.power(n[s - 1] - p.m[s - 1] - 1, 0)
        f = f.derivative(n[s - 1])
        if f.is_zero():
            raise DegenerateParameters("Rodrigues derivative vanished identically", p)
    f = f * TwistedFunction.power(p.m_sum(1, r) + r, p.k + 1)
    if not f.is_polynomial():
        raise DegenerateParameters(f"Rodrigues result {f} is not a polynomial", p)
    result = f.to_poly()
    if result.degree != p.l[0]:
        raise DegenerateParameters(f"Rodrigues result has degree {result.degree}, expected {p.l[0]}", p)
    return result.monic()


# -- orthogonality --------------------------------------------------------


def orthogonality_exponents(p: ParameterSet) -> list[Fraction]:
    """Exponents s of the test functions x^s, group by group."""
    out = []
    for g in range(1, p.r + 1):
        start = -p.m_sum(2, g) - (g - 1)
        out.extend(start + t for t in range(p.l_at(g) - p.l_at(g + 1)))
    return out


def moment_ratios(a: Fraction, b: Fraction, count: int, params: ParameterSet | None = None) -> list[Fraction]:
    """M_j / M_0 for M_j = int_0^1 x^(a+j) (1-x)^b dx, j < count, via (a+j+1)/(a+j+b+2)."""
    ratios = [Fraction(1)]
    for j in range(count - 1):
        num, den = a + j + 1, a + b + j + 2
        if not den:
            raise DegenerateParameters(f"moment ratio pole at shift {j} (a={a}, b={b})", params)
        ratios.append(ratios[-1] * num / den)
    return ratios


def p_via_orthogonality(p: ParameterSet) -> Poly:
    """Monic degree-l_1 polynomial orthogonal to the x^s test functions.

    Weight x^(-m_1-1) (1-x)^(-k-1) on [0, 1]; each condition is divided by
    its lowest moment so it becomes an exact rational equation.
    """
    deg = p.l[0]
    if deg == 0:
        return ONE
    b = -p.k - 1
    rows, rhs = [], []
    for s in orthogonality_exponents(p):
        ratios = moment_ratios(s - p.m[0] - 1, b, deg + 1, p)
        rows.append(ratios[:deg])
        rhs.append(-ratios[deg])
    sol = solve_linear(rows, rhs)
    if not sol.unique:
        raise DegenerateParameters("orthogonality system is singular", p)
    return Poly(list(sol.particular) + [1])


# -- weights ------------------------------------------------------------------


def tau(p: ParameterSet) -> TwistedFunction:
    """(x-1)^k x^(m_1 + ... + m_r)."""
    return TwistedFunction.power(p.m_sum(1, p.r), p.k)


def big_T(p: ParameterSet) -> TwistedFunction:
    """(x-1)^k x^(sum_i i m_i)."""
    return TwistedFunction.power(sum((i * p.m_at(i) for i in range(1, p.r + 1)), Fraction(0)), p.k)


def weights_T(p: ParameterSet) -> list[TwistedFunction]:
    """T_1 = (x-1)^k x^m_1 and T_i = x^m_i."""
    return [TwistedFunction.power(p.m[0], p.k)] + [TwistedFunction.power(v, 0) for v in p.m[1:]]


# -- operators ------------------------------------------------------------------


def build_dual_operator(p: ParameterSet, exponents: ExponentData | None = None) -> DiffOperator:
    """sum_i (A_i x - B_i) / (x^(r+1-i) (x-1)) d^i/dx^i."""
    ex = exponent_data(p) if exponents is None else exponents
    r = p.r
    coeffs = []
    for i in range(r + 2):
        num = Poly((-ex.B[i], ex.A[i]))
        coeffs.append(RatFunc(num, X ** (r + 1 - i) * X_MINUS_ONE))
    return DiffOperator(coeffs)


def build_annihilator(p: ParameterSet, exponents: ExponentData | None = None) -> DiffOperator:
    """tau ∘ (sum_i (-1)^(r+1+i) d^i ∘ c_i) ∘ tau^{-1} with c_i the dual coefficients."""
    dual = build_dual_operator(p, exponents)
    adjoint = formal_adjoint(dual)
    if p.r % 2 == 0:
        adjoint = -adjoint
    return gauge_conjugate(adjoint, tau(p))


def hypergeometric_operator(p: ParameterSet) -> DiffOperator:
    """d^2 - (k x + m_1 (x-1)) / (x(x-1)) d + l_1 (k + m_1 + 1 - l_1) / (x(x-1)), r = 1."""
    if p.r != 1:
        raise ValueError("the hypergeometric form exists only for r = 1")
    m, l, k = p.m[0], p.l[0], p.k
    xx = X * X_MINUS_ONE
    return DiffOperator(
        [
            RatFunc(Poly.constant(l * (k + m + 1 - l)), xx),
            RatFunc(-Poly((-m, k + m)), xx),
            1,
        ]
    )


# -- spaces ---------------------------------------------------------------------


class SpaceKind(str, Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class SpaceBasis:
    kind: SpaceKind
    elements: tuple[Poly, ...]
    params: ParameterSet = field(compare=True)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "params": self.params.to_json(),
            "elements": [e.to_json() for e in self.elements],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpaceBasis":
        return cls(
            SpaceKind(data["kind"]),
            tuple(Poly.from_json(e) for e in data["elements"]),
            ParameterSet.from_json(data["params"]),
        )


def basis_shape(p: ParameterSet, kind: SpaceKind) -> list[tuple[int, int]]:
    """(valuation, degree) of basis element i for the two space types."""
    r = p.r
    out = []
    for i in range(r + 1):
        if kind is SpaceKind.FIRST:
            val = p.m_sum(1, i) + i
            deg = val + p.k - p.l_at(i) + p.l_at(i + 1)
        else:
            val = p.m_sum(r + 1 - i, r) + i
            deg = val + p.l_at(r - i) - p.l_at(r - i + 1)
        out.append((int(val), int(deg)))
    return out


def _coefficient_matrix(polys: Sequence[Poly], width: int) -> list[list[Fraction]]:
    return [[q.coeff(j) for j in range(width)] for q in polys]


def canonical_basis(polys: Sequence[Poly], p: ParameterSet, kind: SpaceKind) -> SpaceBasis:
    """Rewrite a spanning set in the prescribed (valuation, degree) shape.

    Element i is the unique monic element with valuation >= val_i and
    degree <= deg_i; its valuation and degree must then equal val_i, deg_i.
    """
    shape = basis_shape(p, kind)
    polys = [q for q in polys if not q.is_zero()]
    width = max([q.degree for q in polys] + [deg for _, deg in shape]) + 1
    rows, _ = rref(_coefficient_matrix(polys, width))
    if len(rows) != p.r + 1:
        raise ShapeError(f"space has dimension {len(rows)}, expected {p.r + 1}")
    independent = [Poly(row) for row in rows]
    elements = []
    for i, (val, deg) in enumerate(shape):
        outside = [[q.coeff(j) for q in independent] for j in range(width) if j < val or j > deg]
        kernel = nullspace(outside, ncols=len(independent))
        if len(kernel) != 1:
            raise ShapeError(f"{kind.value}-type element {i} spans a {len(kernel)}-dimensional family")
        elem = _combine(independent, kernel[0]).monic()
        if elem.valuation() != val or elem.degree != deg:
            raise ShapeError(
                f"{kind.value}-type element {i} has valuation {elem.valuation()} and degree "
                f"{elem.degree}, expected {val} and {deg}"
            )
        elements.append(elem)
    return SpaceBasis(kind, tuple(elements), p)


def _combine(polys: Sequence[Poly], lam: Sequence[Fraction]) -> Poly:
    out = Poly(())
    for q, c in zip(polys, lam):
        if c:
            out = out + q * c
    return out


def span_equal(a: Sequence[Poly], b: Sequence[Poly]) -> bool:
    width = max([q.degree for q in list(a) + list(b)] + [0]) + 1
    ra = rank(_coefficient_matrix(a, width))
    rb = rank(_coefficient_matrix(b, width))
    return ra == rb == rank(_coefficient_matrix(list(a) + list(b), width))


def seed_space(p: ParameterSet) -> list[Poly]:
    """x^(e_0), ..., x^(e_r) with e_i = i + m_1 + ... + m_i."""
    return [Poly.monomial(int(e)) for e in exponent_data(p).e]


def build_V(p: ParameterSet, ordering: Sequence[int] | None = None) -> SpaceBasis:
    """Space of the first type: the product operator applied to the seed space."""
    ordering = validate_ordering(p, canonical_ordering(p) if ordering is None else ordering)
    fs = seed_space(p)
    for q, i in _intermediate(p, ordering):
        fs = [_apply_step(q, i, f) for f in fs]
    basis = canonical_basis(fs, p, SpaceKind.FIRST)
    check_first_type(basis)
    return basis


def _vanishing_rank(polys: Sequence[Poly], orders: int) -> int:
    """Rank of the functionals f -> f^(j)(1), j < orders, on span(polys)."""
    rows = []
    derivs = list(polys)
    for _ in range(orders):
        rows.append([f(1) for f in derivs])
        derivs = [f.derivative() for f in derivs]
    return rank(rows) if rows else 0


def check_first_type(basis: SpaceBasis) -> None:
    """Shape check plus: vanishing at 1 forces a zero of order >= k+1 there."""
    p = basis.params
    for elem, (val, deg) in zip(basis.elements, basis_shape(p, SpaceKind.FIRST)):
        if elem.valuation() != val or elem.degree != deg or elem.leading_coefficient != 1:
            raise ShapeError(f"first-type element {elem} does not match shape ({val}, {deg})")
    if _vanishing_rank(basis.elements, int(p.k) + 1) > _vanishing_rank(basis.elements, 1):
        raise ShapeError("an element vanishing at 1 has a zero of order <= k there")


def second_type_vanishing_order(basis: SpaceBasis) -> int:
    """Largest order of vanishing at 1 of a nonzero element of the span."""
    dim = len(basis.elements)
    top = max(q.degree for q in basis.elements) + 1
    order = 0
    while order < top and _vanishing_rank(basis.elements, order + 1) < dim:
        order += 1
    return order


def check_second_type(basis: SpaceBasis) -> None:
    """Shape check plus: some element has a zero of order exactly k + r at 1."""
    p = basis.params
    for elem, (val, deg) in zip(basis.elements, basis_shape(p, SpaceKind.SECOND)):
        if elem.valuation() != val or elem.degree != deg or elem.leading_coefficient != 1:
            raise ShapeError(f"second-type element {elem} does not match shape ({val}, {deg})")
    target = int(p.k) + p.r
    order = second_type_vanishing_order(basis)
    if order != target:
        raise ShapeError(f"maximal vanishing order at 1 is {order}, expected {target}")


# -- duality ------------------------------------------------------------------


def divided_wronskian(kind: SpaceKind | str, fs: Sequence[Poly], p: ParameterSet) -> Poly:
    """W(f_1..f_r) divided by T_1^(r-1) ... T_(r-1) (first type) or T_r^(r-1) ... T_2 (second)."""
    kind = SpaceKind(kind)
    r = p.r
    if len(fs) != r:
        raise ValueError(f"expected {r} functions, got {len(fs)}")
    w = wronskian(list(fs))
    weights = weights_T(p)
    divisor = TwistedFunction(ONE)
    for j in range(1, r):
        t = weights[j - 1] if kind is SpaceKind.FIRST else weights[r - j]
        for _ in range(r - j):
            divisor = divisor * t
    result = TwistedFunction(w) * divisor.inverse()
    if not result.is_polynomial():
        raise ArithmeticError(f"divided Wronskian is not a polynomial: {result}")
    return result.to_poly()


def _dual_space(basis: SpaceBasis, kind_in: SpaceKind, kind_out: SpaceKind) -> SpaceBasis:
    if basis.kind is not kind_in:
        raise ValueError(f"expected a {kind_in.value}-type basis")
    p = basis.params
    images = [divided_wronskian(kind_in, list(sub), p) for sub in combinations(basis.elements, p.r)]
    out = canonical_basis(images, p, kind_out)
    (check_second_type if kind_out is SpaceKind.SECOND else check_first_type)(out)
    return out


def build_U_from_V(V: SpaceBasis) -> SpaceBasis:
    return _dual_space(V, SpaceKind.FIRST, SpaceKind.SECOND)


def build_V_from_U(U: SpaceBasis) -> SpaceBasis:
    return _dual_space(U, SpaceKind.SECOND, SpaceKind.FIRST)


def kernel_degree_bound(p: ParameterSet, kind: SpaceKind) -> int:
    """Largest basis degree of the space (the top exponent at infinity)."""
    return max(deg for _, deg in basis_shape(p, kind))


__all__ = [
    "DegenerateParameters",
    "ExponentData",
    "InconsistentParameters",
    "ParameterSet",
    "ShapeError",
    "SpaceBasis",
    "SpaceKind",
    "basis_shape",
    "big_T",
    "build_U_from_V",
    "build_V",
    "build_V_from_U",
    "build_annihilator",
    "build_dual_operator",
    "canonical_basis",
    "canonical_ordering",
    "check_first_type",
    "check_second_type",
    "divided_wronskian",
    "exponent_data",
    "exponents_at_infinity",
    "falling_factorial_coeffs",
    "from_falling_factorial",
    "hypergeometric_operator",
    "kernel_degree_bound",
    "moment_ratios",
    "orthogonality_exponents",
    "p_via_orthogonality",
    "product_operator",
    "rodrigues",
    "seed_space",
    "span_equal",
    "step_operator",
    "tau",
    "v0_via_recursion",
    "validate_ordering",
    "weights_T",
]
