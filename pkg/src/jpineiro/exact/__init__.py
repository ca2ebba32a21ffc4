"""Exact scalar, polynomial, rational-function and twisted-function arithmetic."""

from .linalg import LinearSolution, bareiss_det, nullspace, rank, rref, solve_linear, wronskian
from .poly import (
    ONE,
    X,
    X_MINUS_ONE,
    ZERO,
    Poly,
    RatFunc,
    as_fraction,
    format_rational,
    poly_gcd,
    poly_lcm,
    rational_roots,
)
from .twisted import TwistedFunction

__all__ = [
    "LinearSolution",
    "ONE",
    "Poly",
    "RatFunc",
    "TwistedFunction",
    "X",
    "X_MINUS_ONE",
    "ZERO",
    "as_fraction",
    "bareiss_det",
    "format_rational",
    "nullspace",
    "poly_gcd",
    "poly_lcm",
    "rank",
    "rational_roots",
    "rref",
    "solve_linear",
    "wronskian",
]
