"""Exact scalars, polynomials, rational functions and matrices."""

from .linalg import (LinearSolution, as_matrix, as_vector, det, identity, inverse,
                     is_positive_definite, nullspace, rank, solve_linear)
from .poly import Poly, poly_arith, poly_diff
from .ratfunc import RatFunc, ratfunc
from .scalar import StructuralError, format_scalar, normalize, parse_scalar

__all__ = [
    "LinearSolution", "Poly", "RatFunc", "StructuralError", "as_matrix", "as_vector",
    "det", "format_scalar", "identity", "inverse", "is_positive_definite", "normalize",
    "nullspace", "parse_scalar", "poly_arith", "poly_diff", "rank", "ratfunc", "solve_linear",
]
