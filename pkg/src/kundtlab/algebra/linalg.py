"""Dense exact linear algebra on numpy object arrays.

Entries may be scalars (int/Fraction), :class:`Poly` or :class:`RatFunc`.
Elimination is fraction-free (Bareiss): every intermediate entry is a minor
of the input, so over integers or polynomials all divisions are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .poly import Poly
from .ratfunc import RatFunc, is_zero, parts, ratfunc
from .scalar import StructuralError, is_scalar, normalize


def as_matrix(rows) -> np.ndarray:
    """Object array with strings/numbers normalized to exact scalars."""
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise StructuralError(f"expected a 2-d array, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = x if isinstance(x, (Poly, RatFunc)) else normalize(x)
    return out


def as_vector(values) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    for i, x in enumerate(values):
        arr[i] = x if isinstance(x, (Poly, RatFunc)) else normalize(x)
    return arr


def identity(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = 1
    return m


def zeros(rows: int, cols: int | None = None) -> np.ndarray:
    return np.zeros((rows, rows if cols is None else cols), dtype=object)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[-1] != b.shape[0]:
        raise StructuralError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return np.asarray(a.dot(b), dtype=object)


def is_zero_array(m) -> bool:
    return all(is_zero(x) for x in np.asarray(m, dtype=object).flat)


def arrays_equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(is_zero(x - y) for x, y in zip(a.flat, b.flat))


def is_symbolic(m) -> bool:
    return any(isinstance(x, (Poly, RatFunc)) for x in np.asarray(m, dtype=object).flat)


def _exact(a, b):
    """a / b where the quotient is known to be exact."""
    if is_scalar(a) and is_scalar(b):
        return normalize(Fraction(a) / b)
    if isinstance(a, Poly) and isinstance(b, Poly):
        q = a.exact_div(b)
        if q is None:
            raise ArithmeticError("fraction-free elimination produced an inexact division")
        return q
    if isinstance(a, Poly) and is_scalar(b):
        return a * (1 / Fraction(b))
    return a / b


def _divide(a, b):
    """Field division; a RatFunc when the quotient is not a polynomial."""
    if is_scalar(a) and is_scalar(b):
        return normalize(Fraction(a) / b)
    if isinstance(a, Poly) and isinstance(b, Poly):
        return ratfunc(a, b)
    return a / b


def _echelon(rows: list[list]) -> tuple[list[list], list[int], int]:
    """Bareiss fraction-free row echelon form; returns (rows, pivots, sign)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = 1
    r = 0
    sign = 1
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if not is_zero(m[i][c])), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, nrows):
            lead = m[i][c]
            for j in range(c + 1, ncols):
                m[i][j] = _exact(piv * m[i][j] - lead * m[r][j], prev)
            m[i][c] = 0
        # rows that were already zero in this column still need the Bareiss scaling
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, sign


def det(m) -> object:
    m = np.asarray(m, dtype=object)
    n, k = m.shape
    if n != k:
        raise StructuralError(f"determinant of non-square {m.shape} matrix")
    if n == 0:
        return 1
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    rows, pivots, sign = _echelon(m.tolist())
    if len(pivots) < n:
        return 0
    d = rows[n - 1][n - 1]
    return d if sign > 0 else -d


def clear_denominators(m) -> np.ndarray:
    """Scale each row by a common denominator so entries become polynomial/integer."""
    m = np.asarray(m, dtype=object)
    out = np.empty(m.shape, dtype=object)
    for i, row in enumerate(m):
        dens = []
        for x in row:
            if isinstance(x, RatFunc):
                dens.append(x.den)
        scale = None
        for d in dens:
            if scale is None:
                scale = d
            elif scale.exact_div(d) is None:
                scale = scale * d
        lcm_int = 1
        for x in row:
            if isinstance(x, Fraction):
                lcm_int = lcm_int * x.denominator // math.gcd(lcm_int, x.denominator)
            elif isinstance(x, (Poly, RatFunc)):
                num = x if isinstance(x, Poly) else x.num
                for _, c in num.items():
                    if isinstance(c, Fraction):
                        lcm_int = lcm_int * c.denominator // math.gcd(lcm_int, c.denominator)
        for j, x in enumerate(row):
            y = x * scale if scale is not None else x
            out[i, j] = normalize(y * lcm_int) if is_scalar(y) else y * lcm_int
    return out


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    if is_symbolic(m):
        m = clear_denominators(m)
    _, pivots, _ = _echelon(m.tolist())
    return len(pivots)


@dataclass(frozen=True)
class LinearSolution:
    solution: np.ndarray
    nullspace: list[np.ndarray]


def _back_substitute(rows, pivots, ncols, rhs_col: bool, free_values: dict[int, object]):
    x = [0] * ncols
    for c, v in free_values.items():
        x[c] = v
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = rows[r][ncols] if rhs_col else 0
        for j in range(c + 1, ncols):
            if not is_zero(x[j]) and not is_zero(rows[r][j]):
                s = s - rows[r][j] * x[j]
        x[c] = _divide(s, rows[r][c])
    return as_vector(x)


def solve_linear(a, b) -> LinearSolution | None:
    """Solve ``a x = b`` exactly.

    Returns a particular solution and a nullspace basis of ``a``, or
    ``None`` when the system is inconsistent.  ``b`` may be a vector or a
    single-column matrix.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.ndim != 2:
        raise StructuralError("coefficient matrix must be 2-d")
    if b.ndim == 2:
        if b.shape[1] != 1:
            raise StructuralError("right-hand side must be a single column")
        b = b[:, 0]
    if b.shape[0] != a.shape[0]:
        raise StructuralError(f"dimension mismatch: A is {a.shape}, b has {b.shape[0]} rows")
    nrows, ncols = a.shape
    aug = np.empty((nrows, ncols + 1), dtype=object)
    aug[:, :ncols] = a
    aug[:, ncols] = b
    aug = clear_denominators(aug)
    rows, pivots, _ = _echelon(aug.tolist())
    if ncols in pivots:
        return None
    free = [c for c in range(ncols) if c not in pivots]
    particular = _back_substitute(rows, pivots, ncols, True, {c: 0 for c in free})
    basis = []
    for f in free:
        values = {c: (1 if c == f else 0) for c in free}
        basis.append(_back_substitute(rows, pivots, ncols, False, values))
    return LinearSolution(particular, basis)


def nullspace(m) -> list[np.ndarray]:
    m = np.asarray(m, dtype=object)
    nrows, ncols = m.shape
    if nrows == 0:
        return [as_vector([1 if i == j else 0 for i in range(ncols)]) for j in range(ncols)]
    sol = solve_linear(m, zeros(nrows, 1))
    return sol.nullspace


def adjugate(m) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    adj = np.empty((n, n), dtype=object)
    if n == 1:
        adj[0, 0] = 1
        return adj
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, j, axis=0), i, axis=1)
            c = det(minor)
            adj[i, j] = c if (i + j) % 2 == 0 else -c
    return adj


def inverse(m) -> np.ndarray:
    """Exact inverse; symbolic matrices share the common denominator det(m)."""
    m = np.asarray(m, dtype=object)
    n, k = m.shape
    if n != k:
        raise StructuralError(f"inverse of non-square {m.shape} matrix")
    if not is_symbolic(m):
        sol_cols = []
        for j in range(n):
            e = as_vector([1 if i == j else 0 for i in range(n)])
            sol = solve_linear(m, e)
            if sol is None or sol.nullspace:
                raise ZeroDivisionError("matrix is singular")
            sol_cols.append(sol.solution)
        return np.array(sol_cols, dtype=object).T.copy()
    d = det(m)
    if is_zero(d):
        raise ZeroDivisionError("matrix is singular")
    adj = adjugate(m)
    out = np.empty((n, n), dtype=object)
    for idx, x in np.ndenumerate(adj):
        out[idx] = _divide(x, d) if not is_zero(x) else 0
    return out


def leading_principal_minors(g) -> list:
    g = np.asarray(g, dtype=object)
    return [det(g[:k, :k]) for k in range(1, g.shape[0] + 1)]


def is_positive_definite(g) -> bool:
    """Sylvester's criterion on exact scalar matrices (symmetric assumed)."""
    g = np.asarray(g, dtype=object)
    if g.shape[0] == 0:
        return True
    if not arrays_equal(g, g.T):
        return False
    return all(m > 0 for m in leading_principal_minors(g))


def congruence_diagonalize(q) -> tuple[np.ndarray, list]:
    """Rational P with P^T q P diagonal, for symmetric scalar q."""
    a = [[normalize(x) for x in row] for row in np.asarray(q, dtype=object).tolist()]
    n = len(a)
    p = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    def add_to(k, j, f):
        # column/row k += f * column/row j
        for row in a:
            row[k] = row[k] + f * row[j]
        a[k] = [x + f * y for x, y in zip(a[k], a[j])]
        for row in p:
            row[k] = row[k] + f * row[j]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                add_to(k, j, 1)
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add_to(i, k, -Fraction(a[i][k]) / a[k][k])
    d = [normalize(a[i][i]) for i in range(n)]
    return as_matrix(p), d


def parallel(u, v) -> bool:
    """True when all 2x2 minors of the pair vanish (u, v linearly dependent)."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if not is_zero(u[i] * v[j] - u[j] * v[i]):
                return False
    return True


def in_span(vectors, w) -> bool:
    if not vectors:
        return is_zero_array(w)
    base = np.array([list(v) for v in vectors], dtype=object)
    ext = np.array([list(v) for v in vectors] + [list(w)], dtype=object)
    return rank(ext) == rank(base)


def coordinates_in(basis_cols, w):
    """Coefficients expressing ``w`` in the columns of ``basis_cols``; None if outside."""
    sol = solve_linear(np.asarray(basis_cols, dtype=object), as_vector(list(w)))
    if sol is None:
        return None
    return sol.solution


def common_denominator_parts(x, vars):
    return parts(x, vars)
