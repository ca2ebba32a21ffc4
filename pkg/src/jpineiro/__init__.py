"""Exact construction of Jacobi-Piñeiro polynomials and their annihilating Fuchsian operators."""

from .diffop import DiffOperator, formal_adjoint, gauge_conjugate, indicial_roots, polynomial_kernel
from .exact import Poly, RatFunc, TwistedFunction, wronskian
from .pineiro import (
    ParameterSet,
    build_annihilator,
    build_dual_operator,
    build_U_from_V,
    build_V,
    p_via_orthogonality,
    rodrigues,
    v0_via_recursion,
)
from .verify import verify_all

__version__ = "0.1.0"
