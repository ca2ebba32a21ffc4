"""Exact linear algebra over the rationals, determinants and Wronskians."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .poly import Poly, RatFunc, as_fraction
from .twisted import TwistedFunction


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with unit pivots; returns (rows, pivot columns)."""
    rows = [[as_fraction(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = rows[r] = [v * inv for v in pr]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                row = rows[i]
                rows[i] = [a - f * b if b else a for a, b in zip(row, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass(frozen=True)
class LinearSolution:
    """All solutions of ``A x = b``: ``particular + span(kernel)``.

    ``particular`` is None when the system is inconsistent.
    """

    rank: int
    particular: tuple[Fraction, ...] | None
    kernel: tuple[tuple[Fraction, ...], ...] = field(default=())

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.consistent and not self.kernel


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence | None = None, ncols: int | None = None) -> LinearSolution:
    """Solve ``matrix @ x = rhs`` exactly (rhs defaults to zero)."""
    if ncols is None:
        if not matrix:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(matrix[0])
    if rhs is None:
        rhs = [0] * len(matrix)
    if len(rhs) != len(matrix):
        raise ValueError("rhs length does not match the number of rows")
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for row in aug:
        if len(row) != ncols + 1:
            raise ValueError("matrix is not rectangular")
    rows, pivots = rref(aug) if aug else ([], [])
    if ncols in pivots:
        return LinearSolution(rank=len(pivots) - 1, particular=None, kernel=_kernel(rows, pivots, ncols))
    particular = [Fraction(0)] * ncols
    for row, c in zip(rows, pivots):
        particular[c] = row[ncols]
    return LinearSolution(rank=len(pivots), particular=tuple(particular), kernel=_kernel(rows, pivots, ncols))


def _kernel(rows, pivots, ncols) -> tuple[tuple[Fraction, ...], ...]:
    pivot_set = [c for c in pivots if c < ncols]
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, c in zip(rows, pivots):
            if c < ncols:
                vec[c] = -row[f]
        basis.append(tuple(vec))
    return tuple(basis)


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    return solve_linear(matrix, None, ncols).kernel


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1]) if matrix else 0


def bareiss_det(matrix: Sequence[Sequence], exact_div: Callable, zero):
    """Fraction-free determinant over a ring with exact division."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = val if prev is None else exact_div(val, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def wronskian(fs):
    """det(f_j^(t)) with derivative orders t = 0..s-1.

    Polynomials give a Poly, rational functions a RatFunc, twisted functions
    a TwistedFunction (their exponents must differ pairwise by integers).
    """
    fs = list(fs)
    if not fs:
        raise ValueError("Wronskian of an empty list")
    if all(isinstance(f, Poly) for f in fs):
        rows = _derivative_rows(fs)
        return bareiss_det(rows, Poly.exact_div, Poly(()))
    if all(isinstance(f, (Poly, RatFunc)) for f in fs):
        rows = _derivative_rows([RatFunc.coerce(f) for f in fs])
        return bareiss_det(rows, lambda a, b: a / b, RatFunc(0))
    if all(isinstance(f, (Poly, TwistedFunction)) for f in fs):
        return _twisted_wronskian([f if isinstance(f, TwistedFunction) else TwistedFunction(f) for f in fs])
    raise TypeError("wronskian expects Poly, RatFunc or TwistedFunction inputs")


def _derivative_rows(fs):
    rows = [fs]
    for _ in range(len(fs) - 1):
        rows.append([f.derivative() for f in rows[-1]])
    return rows


def _twisted_wronskian(fs: list[TwistedFunction]) -> TwistedFunction:
    # W(h g_1, ..., h g_s) = h^s W(g_1, ..., g_s) with h the twist of a nonzero f.
    base = next((f for f in fs if not f.is_zero()), None)
    if base is None:
        return TwistedFunction(Poly(()))
    h = TwistedFunction.power(base.exp_zero, base.exp_one)
    h_inv = h.inverse()
    gs = [(f * h_inv).to_ratfunc() for f in fs]
    w = wronskian(gs)
    out = TwistedFunction.from_ratfunc(w)
    for _ in fs:
        out = out * h
    return out
