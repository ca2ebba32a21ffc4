"""Pass/fail verification of every structural identity over parameter grids."""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .diffop import DiffOperator, IrregularSingularity, indicial_roots, polynomial_kernel
from .exact import Poly, as_fraction, format_rational, wronskian
from .pineiro import (
    DegenerateParameters,
    ExponentData,
    ParameterSet,
    ShapeError,
    SpaceKind,
    big_T,
    build_annihilator,
    build_dual_operator,
    build_U_from_V,
    build_V,
    build_V_from_U,
    canonical_basis,
    canonical_ordering,
    check_first_type,
    check_second_type,
    exponent_data,
    exponents_at_infinity,
    from_falling_factorial,
    hypergeometric_operator,
    kernel_degree_bound,
    p_via_orthogonality,
    product_operator,
    rodrigues,
    step_operator,
    v0_via_recursion,
)

DEFAULT_SEED = 20070101

PASS, FAIL, SKIP = "pass", "fail", "skipped"


class Skip(Exception):
    """A check does not apply (or is degenerate) at these parameters."""


class CheckFailed(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""
    witness: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class VerificationReport:
    params: ParameterSet
    checks: tuple[CheckResult, ...]
    elapsed: float = field(default=0.0, compare=False)
    seed: int | None = None

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def status_of(self, name: str) -> str:
        return next(c.status for c in self.checks if c.name == name)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "params": self.params.to_json(),
            "consistent": self.params.consistent,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if include_timing:
            out["elapsed_seconds"] = round(self.elapsed, 6)
        return out

    def to_text(self) -> str:
        lines = [f"{self.params}  ({'consistent' if self.params.consistent else 'generic'})"]
        width = max(len(c.name) for c in self.checks)
        for c in self.checks:
            line = f"  {c.name:<{width}}  {c.status}"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
        return "\n".join(lines)


# -- independent oracle ---------------------------------------------------------


def jacobi_oracle(l: int, alpha, beta) -> Poly:
    """Monic Jacobi polynomial of degree l on [0, 1], weight (1-x)^alpha x^beta.

    Built from the monic three-term recurrence of the [-1, 1] family under
    t = 2x - 1: q_{n+1} = (x - (1 + b_n)/2) q_n - (c_n / 4) q_{n-1}.
    """
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    s = alpha + beta
    prev, cur = Poly(()), Poly((1,))
    for n in range(l):
        if n == 0:
            if s + 2 == 0:
                raise DegenerateParameters("singular recurrence at n=0 (alpha+beta = -2)")
            b = (beta - alpha) / (s + 2)
            c = Fraction(0)
        else:
            den_b = (2 * n + s) * (2 * n + s + 2)
            if n == 1:
                den_c = (2 + s) ** 2 * (3 + s)
                num_c = 4 * (1 + alpha) * (1 + beta)
            else:
                den_c = (2 * n + s) ** 2 * (2 * n + s + 1) * (2 * n + s - 1)
                num_c = 4 * n * (n + alpha) * (n + beta) * (n + s)
            if not den_b or not den_c:
                raise DegenerateParameters(f"singular recurrence at n={n} (alpha={alpha}, beta={beta})")
            b = (beta * beta - alpha * alpha) / den_b
            c = num_c / den_c
        prev, cur = cur, Poly((-(1 + b) / 2, 1)) * cur - prev * (c / 4)
    return cur


# -- individual checks ------------------------------------------------------------


class _Context:
    """Objects shared by the checks of one parameter set, built lazily."""

    def __init__(self, p: ParameterSet, exponents: ExponentData | None):
        self.p = p
        self.override = exponents
        self._cache: dict[str, object] = {}

    def get(self, name: str, build: Callable):
        if name not in self._cache:
            try:
                self._cache[name] = build()
            except Exception as exc:  # memoize failures too
                self._cache[name] = exc
        value = self._cache[name]
        if isinstance(value, Exception):
            raise value
        return value

    @property
    def exponents(self) -> ExponentData:
        return self.get("exponents", lambda: self.override or exponent_data(self.p))

    @property
    def D(self) -> DiffOperator:
        return self.get("D", lambda: build_annihilator(self.p, self.exponents))

    @property
    def dual(self) -> DiffOperator:
        return self.get("dual", lambda: build_dual_operator(self.p, self.exponents))

    @property
    def v0(self) -> Poly:
        self.require_consistent()
        return self.get("v0", lambda: v0_via_recursion(self.p))

    @property
    def orth(self) -> Poly:
        return self.get("orth", lambda: p_via_orthogonality(self.p))

    @property
    def V(self):
        self.require_consistent()
        return self.get("V", lambda: build_V(self.p))

    @property
    def U(self):
        return self.get("U", lambda: build_U_from_V(self.V))

    def require_consistent(self):
        if not self.p.consistent:
            raise Skip("parameters are not consistent")


def check_structural_constants(ctx: _Context):
    ex, r = ctx.exponents, ctx.p.r
    d0 = Poly.from_roots(ex.d)(0)
    problems = []
    if ex.A[r + 1] != 1:
        problems.append(f"A_(r+1) = {format_rational(ex.A[r + 1])}")
    if ex.B[r + 1] != 1:
        problems.append(f"B_(r+1) = {format_rational(ex.B[r + 1])}")
    if ex.B[0] != 0:
        problems.append(f"B_0 = {format_rational(ex.B[0])}")
    if ex.A[0] != d0:
        problems.append(f"A_0 = {format_rational(ex.A[0])} but d(0) = {format_rational(d0)}")
    if ex.a[0] != 0 or ex.e[0] != 0:
        problems.append("a_0 or e_0 is nonzero")
    if problems:
        raise CheckFailed("; ".join(problems), ex.to_json())


def check_falling_factorial(ctx: _Context):
    ex = ctx.exponents
    for name, coeffs, roots in (("A", ex.A, ex.d), ("B", ex.B, ex.a)):
        rebuilt = from_falling_factorial(coeffs)
        if rebuilt != Poly.from_roots(roots):
            raise CheckFailed(f"sum {name}_i falling_i(alpha) differs from its root product", rebuilt.to_json())


def check_commutation(ctx: _Context):
    p = ctx.p
    r = p.r
    for i, j in itertools.combinations_with_replacement(range(r + 1), 2):
        li = [v + (1 if s < i else 0) for s, v in enumerate(p.l)]
        lj = [v + (1 if s < j else 0) for s, v in enumerate(p.l)]
        try:
            pi = ParameterSet(p.m, tuple(li), p.k + 1)
            pj = ParameterSet(p.m, tuple(lj), p.k + 1)
        except ValueError:
            continue  # l + 1_i leaves the nonincreasing cone
        left = step_operator(pi, j) * step_operator(p, i)
        right = step_operator(pj, i) * step_operator(p, j)
        if left != right:
            raise CheckFailed(f"D_{j} D_{i} != D_{i} D_{j}", (left - right).to_json())


def alternative_ordering(p: ParameterSet) -> tuple[int, ...] | None:
    """A valid ordering different from the canonical one, if any exists."""
    canon = canonical_ordering(p)
    alt = tuple(reversed(canon))
    if alt != canon:
        return alt
    return None


def check_ordering_independence(ctx: _Context):
    ctx.require_consistent()
    alt = alternative_ordering(ctx.p)
    if alt is None:
        raise Skip("only one valid ordering")
    first = product_operator(ctx.p)
    second = product_operator(ctx.p, alt)
    if first != second:
        raise CheckFailed(f"orderings {canonical_ordering(ctx.p)} and {alt} differ", (first - second).to_json())
    if build_V(ctx.p, alt) != ctx.V:
        raise CheckFailed("space V depends on the ordering")


def check_annihilator_monic(ctx: _Context):
    D = ctx.D
    if D.order != ctx.p.r + 1 or D.leading_coefficient != 1:
        raise CheckFailed("annihilator is not monic of order r+1", D.leading_coefficient.to_json())
    if ctx.dual.order != ctx.p.r + 1 or ctx.dual.leading_coefficient != 1:
        raise CheckFailed("dual operator is not monic of order r+1", ctx.dual.leading_coefficient.to_json())


def check_hypergeometric(ctx: _Context):
    if ctx.p.r != 1:
        raise Skip("r != 1")
    expected = hypergeometric_operator(ctx.p)
    if ctx.D != expected:
        raise CheckFailed("annihilator differs from the hypergeometric operator", (ctx.D - expected).to_json())


def check_annihilation_recursion(ctx: _Context):
    residual = ctx.D.apply(ctx.v0)
    if not residual.is_zero():
        raise CheckFailed("D(v0) != 0", residual.to_json())


def check_annihilation_orthogonality(ctx: _Context):
    residual = ctx.D.apply(ctx.orth)
    if not residual.is_zero():
        raise CheckFailed("D(P) != 0 for the orthogonality polynomial", residual.to_json())


def check_three_routes(ctx: _Context):
    rod = rodrigues(ctx.p)
    if ctx.p.consistent and ctx.v0 != rod:
        raise CheckFailed(f"recursion {ctx.v0} != rodrigues {rod}", [ctx.v0.to_json(), rod.to_json()])
    orth = ctx.orth
    if rod != orth:
        raise CheckFailed(f"rodrigues {rod} != orthogonality {orth}", [rod.to_json(), orth.to_json()])


def check_jacobi_oracle(ctx: _Context):
    p = ctx.p
    if p.r != 1:
        raise Skip("r != 1")
    oracle = jacobi_oracle(p.l[0], -p.k - 1, -p.m[0] - 1)
    ours = ctx.v0 if p.consistent else ctx.orth
    if oracle != ours:
        raise CheckFailed(f"Jacobi oracle {oracle} != {ours}", [oracle.to_json(), ours.to_json()])


def check_kernel_V(ctx: _Context):
    ctx.require_consistent()
    p = ctx.p
    kernel = polynomial_kernel(ctx.D, kernel_degree_bound(p, SpaceKind.FIRST))
    if len(kernel) != p.r + 1:
        raise CheckFailed(f"kernel of D has dimension {len(kernel)}", [q.to_json() for q in kernel])
    try:
        basis = canonical_basis(kernel, p, SpaceKind.FIRST)
        check_first_type(basis)
    except ShapeError as exc:
        raise CheckFailed(str(exc), [q.to_json() for q in kernel]) from None
    if basis != ctx.V:
        raise CheckFailed("kernel of D differs from V", basis.to_json())


def check_kernel_U(ctx: _Context):
    ctx.require_consistent()
    p = ctx.p
    U = ctx.U
    kernel = polynomial_kernel(ctx.dual, kernel_degree_bound(p, SpaceKind.SECOND))
    if len(kernel) != p.r + 1:
        raise CheckFailed(f"kernel of the dual operator has dimension {len(kernel)}", [q.to_json() for q in kernel])
    try:
        basis = canonical_basis(kernel, p, SpaceKind.SECOND)
        check_second_type(basis)
    except ShapeError as exc:
        raise CheckFailed(str(exc), [q.to_json() for q in kernel]) from None
    if basis != U:
        raise CheckFailed("kernel of the dual operator differs from U", basis.to_json())


def check_wronskian_T(ctx: _Context):
    ctx.require_consistent()
    w = wronskian(list(ctx.U.elements))
    target = big_T(ctx.p).to_poly()
    if w.is_zero() or w * target.leading_coefficient != target * w.leading_coefficient:
        raise CheckFailed("Wronskian of U is not a multiple of T", w.to_json())


def check_duality_round_trip(ctx: _Context):
    ctx.require_consistent()
    back = build_V_from_U(ctx.U)
    if back != ctx.V:
        raise CheckFailed("U -> V divided Wronskians do not recover V", back.to_json())


def _roots_match(op: DiffOperator, point, expected: Sequence[Fraction]):
    data = indicial_roots(op, point)
    got = sorted(data.roots)
    if got != sorted(expected) or data.irrational_factor.degree > 0:
        raise CheckFailed(
            f"exponents at {point}: got {[format_rational(v) for v in got]}, "
            f"expected {[format_rational(v) for v in sorted(expected)]}",
            data.polynomial.to_json(),
        )


def check_exponents_D(ctx: _Context):
    p = ctx.p
    try:
        _roots_match(ctx.D, 0, exponent_data(p).e)
        _roots_match(ctx.D, 1, [Fraction(0)] + [p.k + j for j in range(1, p.r + 1)])
        _roots_match(ctx.D, "infinity", exponents_at_infinity(p))
    except IrregularSingularity as exc:
        raise CheckFailed(str(exc)) from None


def check_exponents_dual(ctx: _Context):
    p = ctx.p
    true = exponent_data(p)
    try:
        _roots_match(ctx.dual, 0, true.a)
        _roots_match(ctx.dual, "infinity", true.d)
    except IrregularSingularity as exc:
        raise CheckFailed(str(exc)) from None


CHECKS: tuple[tuple[str, Callable[[_Context], None]], ...] = (
    ("structural_constants", check_structural_constants),
    ("falling_factorial_reconstruction", check_falling_factorial),
    ("step_commutation", check_commutation),
    ("ordering_independence", check_ordering_independence),
    ("operators_monic", check_annihilator_monic),
    ("hypergeometric_form", check_hypergeometric),
    ("annihilation_recursion", check_annihilation_recursion),
    ("annihilation_orthogonality", check_annihilation_orthogonality),
    ("three_route_agreement", check_three_routes),
    ("jacobi_oracle", check_jacobi_oracle),
    ("kernel_is_V", check_kernel_V),
    ("dual_kernel_is_U", check_kernel_U),
    ("wronskian_of_U", check_wronskian_T),
    ("duality_round_trip", check_duality_round_trip),
    ("exponents_of_D", check_exponents_D),
    ("exponents_of_dual", check_exponents_dual),
)

CHECK_NAMES = tuple(name for name, _ in CHECKS)


def verify_all(p: ParameterSet, exponents: ExponentData | None = None, seed: int | None = None) -> VerificationReport:
    """Run every check for ``p``; ``exponents`` overrides the derived numbers (negative controls)."""
    ctx = _Context(p, exponents)
    start = time.perf_counter()
    results = []
    for name, check in CHECKS:
        try:
            check(ctx)
        except Skip as exc:
            results.append(CheckResult(name, SKIP, str(exc)))
        except DegenerateParameters as exc:
            results.append(CheckResult(name, SKIP, f"degenerate: {exc}"))
        except CheckFailed as exc:
            results.append(CheckResult(name, FAIL, str(exc), exc.witness))
        except (ShapeError, ArithmeticError, IrregularSingularity) as exc:
            results.append(CheckResult(name, FAIL, f"{type(exc).__name__}: {exc}", str(exc)))
        else:
            results.append(CheckResult(name, PASS))
    return VerificationReport(p, tuple(results), time.perf_counter() - start, seed)


def corrupt_A(p: ParameterSet, index: int, delta=1) -> ExponentData:
    """Exponent data with A_index shifted by ``delta``."""
    ex = exponent_data(p)
    A = list(ex.A)
    A[index] += as_fraction(delta)
    return replace(ex, A=tuple(A))


# -- grids ------------------------------------------------------------------------


def consistent_grid(r_values: Sequence[int], m_max: int, k_max: int) -> Iterator[ParameterSet]:
    """All consistent parameter sets with 0 <= m_i <= m_max and 0 <= k <= k_max."""
    for r in r_values:
        for m in itertools.product(range(m_max + 1), repeat=r):
            for k in range(k_max + 1):
                yield from _consistent_ls(m, k)


def _consistent_ls(m: Sequence[int], k: int) -> Iterator[ParameterSet]:
    r = len(m)

    def rec(prefix: list[int], upper: int):
        s = len(prefix)
        if s == r:
            if prefix[-1] <= m[-1]:
                yield ParameterSet(tuple(m), tuple(prefix), k)
            return
        for v in range(upper + 1):
            # l_s - l_{s+1} <= m_s for the previous index
            if prefix and prefix[-1] - v > m[s - 1]:
                continue
            yield from rec(prefix + [v], v)

    yield from rec([], k)


def _small_rational(rng: random.Random, height: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, max_den))


def generic_samples(count: int, seed: int = DEFAULT_SEED, r_values: Sequence[int] = (1, 2), l_max: int = 3) -> list[ParameterSet]:
    """Seeded random parameter sets with small-height rational m, k."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = rng.choice(list(r_values))
        m = tuple(_small_rational(rng) for _ in range(r))
        l = tuple(sorted((rng.randint(0, l_max) for _ in range(r)), reverse=True))
        k = _small_rational(rng)
        out.append(ParameterSet(m, l, k))
    return out


@dataclass
class SweepConfig:
    r_max: int = 3
    m_max: int = 3
    k_max: int = 4
    r_min: int = 1
    generic: int = 0
    seed: int = DEFAULT_SEED
    jobs: int = 1

    def parameter_sets(self) -> list[ParameterSet]:
        ps = []
        if self.r_max >= self.r_min and self.m_max >= 0 and self.k_max >= 0:
            ps = list(consistent_grid(range(self.r_min, self.r_max + 1), self.m_max, self.k_max))
        if self.generic:
            ps.extend(generic_samples(self.generic, self.seed))
        return ps


def sweep(config: SweepConfig) -> list[VerificationReport]:
    """verify_all over the configured grid; results keep grid order for any ``jobs``."""
    ps = config.parameter_sets()
    if config.jobs > 1 and len(ps) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(verify_all, ps, chunksize=8))
    else:
        reports = [verify_all(p) for p in ps]
    return [replace(rep, seed=config.seed) if not rep.params.consistent else rep for rep in reports]


def summarize(reports: Sequence[VerificationReport]) -> dict:
    counts = {name: {PASS: 0, FAIL: 0, SKIP: 0} for name in CHECK_NAMES}
    for rep in reports:
        for c in rep.checks:
            counts[c.name][c.status] += 1
    return {
        "cases": len(reports),
        "failed_cases": sum(1 for rep in reports if not rep.passed),
        "checks": counts,
    }


def reports_to_json(reports: Sequence[VerificationReport], include_timing: bool = False) -> str:
    return json.dumps(
        {"reports": [rep.to_json(include_timing) for rep in reports], "summary": summarize(reports)},
        indent=1,
    )
