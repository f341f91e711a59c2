"""The structure group GN of a null line in Minkowski space.

Basis order is ``(k, l, m_1 .. m_{n-2})`` with eta(k, l) = 1, eta(m_i, m_j)
= delta_ij and everything else zero.  k^perp is spanned by k and the m_i.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import linalg
from .algebra.ratfunc import is_zero
from .algebra.scalar import StructuralError, normalize
from .boost import Tensor
from .report import Violation


def eta(n: int) -> np.ndarray:
    if n < 3:
        raise StructuralError(f"Minkowski space here needs n >= 3, got {n}")
    m = linalg.identity(n)
    m[0, 0] = m[1, 1] = 0
    m[0, 1] = m[1, 0] = 1
    return m


def basis_vector(n: int, i: int) -> list:
    return [1 if j == i else 0 for j in range(n)]


def _square(m) -> np.ndarray:
    m = linalg.as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise StructuralError(f"expected a square matrix, got {m.shape}")
    return m


def _perp_indices(n: int) -> list[int]:
    return [0] + list(range(2, n))


def pullback_matrix(m) -> np.ndarray:
    """M^T eta M - eta as a matrix."""
    m = _square(m)
    e = eta(m.shape[0])
    return linalg.matmul(linalg.matmul(m.T, e), m) - e


def gn_conditions(m) -> dict[str, bool | Violation]:
    """Each of the three defining conditions with its first witness."""
    m = _square(m)
    n = m.shape[0]
    k = basis_vector(n, 0)
    col0 = m[:, 0]
    out: dict[str, bool | Violation] = {"i": True, "ii": True, "iii": True}
    if is_zero(col0[0]) or any(not is_zero(x) for x in col0[1:]):
        out["i"] = Violation("gn-member", "i", "f(k) is not a nonzero multiple of k",
                             {"w": k, "f(w)": list(col0)})
    d = pullback_matrix(m)
    perp = _perp_indices(n)
    bad = next(((i, j) for i in perp for j in perp if j >= i and not is_zero(d[i, j])), None)
    if bad is not None:
        i, j = bad
        out["ii"] = Violation("gn-member", "ii", "eta(f w, f w~) != eta(w, w~) on k-perp",
                              {"w": basis_vector(n, i), "w~": basis_vector(n, j), "delta": d[i, j]})
    j = next((j for j in range(n) if not is_zero(d[0, j])), None)
    if j is not None:
        out["iii"] = Violation("gn-member", "iii", "eta(f k, f z) != eta(k, z)",
                               {"w": k, "z": basis_vector(n, j), "delta": d[0, j]})
    return out


def gn_member(m) -> bool | Violation:
    """Check the three defining conditions in order, reporting the first failure."""
    for verdict in gn_conditions(m).values():
        if not verdict:
            return verdict
    return True


def is_orthogonal(c) -> bool:
    c = linalg.as_matrix(c) if len(c) else np.zeros((0, 0), dtype=object)
    return linalg.arrays_equal(linalg.matmul(c.T, c), linalg.identity(c.shape[0]))


def gn_from_params(a, b, avec, c) -> np.ndarray:
    """Block matrix with column 0 = (a, 0..), row 1 = (0, 1/a, 0..).

    ``b`` fills column 1 (b_1 in row 0, b_2.. below row 1), ``avec`` fills
    row 0 right of b_1, and ``c`` is the orthogonal screen block.
    """
    a = normalize(a)
    if a == 0:
        raise ValueError("GN parameter a must be nonzero")
    b = [normalize(x) for x in b]
    avec = [normalize(x) for x in avec]
    n = len(b) + 1
    if len(avec) != n - 2:
        raise StructuralError(f"avec needs {n - 2} entries, got {len(avec)}")
    c = linalg.as_matrix(c) if n > 2 else np.zeros((0, 0), dtype=object)
    if c.shape != (n - 2, n - 2):
        raise StructuralError(f"C must be {(n - 2, n - 2)}, got {c.shape}")
    if not is_orthogonal(c):
        raise ValueError("C is not orthogonal")
    m = linalg.zeros(n)
    m[0, 0] = a
    m[1, 1] = normalize(1 / Fraction(a))
    m[0, 1] = b[0]
    for i in range(n - 2):
        m[0, 2 + i] = avec[i]
        m[2 + i, 1] = b[1 + i]
        for j in range(n - 2):
            m[2 + i, 2 + j] = c[i, j]
    return m


def sim_element(a, bscreen, c) -> np.ndarray:
    """The element of GN that also preserves eta, for given a, screen b and C.

    Solving eta(f l, f l) = 0 and eta(f l, f m_j) = 0 fixes b_1 and avec.
    """

    a = normalize(a)
    bscreen = [normalize(x) for x in bscreen]
    c = linalg.as_matrix(c) if bscreen else np.zeros((0, 0), dtype=object)
    b1 = normalize(-Fraction(a) * sum(x * x for x in bscreen) / 2)
    avec = [normalize(-a * sum(bscreen[i] * c[i, j] for i in range(len(bscreen))))
            for j in range(len(bscreen))]
    return gn_from_params(a, [b1] + bscreen, avec, c)


def gn_algebra_member(a) -> bool | Violation:
    """Linearized conditions: A k in R k, skew on k-perp, and on k against everything."""
    a = _square(a)
    n = a.shape[0]
    col0 = a[:, 0]
    if any(not is_zero(x) for x in col0[1:]):
        return Violation("gn-algebra-member", "i", "A(k) is not a multiple of k",
                         {"A(k)": list(col0)})
    e = eta(n)
    s = linalg.matmul(a.T, e) + linalg.matmul(e, a)
    for i in _perp_indices(n):
        for j in _perp_indices(n):
            if j >= i and not is_zero(s[i, j]):
                return Violation("gn-algebra-member", "ii",
                                 "eta(Aw, w~) + eta(w, Aw~) != 0 on k-perp",
                                 {"w": basis_vector(n, i), "w~": basis_vector(n, j),
                                  "value": s[i, j]})
    for j in range(n):
        if not is_zero(s[0, j]):
            return Violation("gn-algebra-member", "iii", "eta(Ak, z) + eta(k, Az) != 0",
                             {"z": basis_vector(n, j), "value": s[0, j]})
    return True


def pullback_delta(f) -> Tensor:
    """The covariant 2-tensor f*eta - eta."""
    return Tensor.covariant2(pullback_matrix(f))


def eta_tensor(n: int) -> Tensor:
    return Tensor.covariant2(eta(n))


def random_orthogonal_signed_permutation(rng, size: int) -> np.ndarray:
    perm = list(range(size))
    rng.shuffle(perm)
    c = linalg.zeros(size)
    for i, p in enumerate(perm):
        c[i, p] = rng.choice((1, -1))
    return c


def random_rational_rotation(rng, size: int) -> np.ndarray:
    """Signed permutation times a rational Givens rotation (Pythagorean triple)."""

    c = random_orthogonal_signed_permutation(rng, size)
    if size >= 2:
        p, q = rng.randint(1, 4), rng.randint(1, 4)
        r = p * p + q * q
        cs, sn = Fraction(p * p - q * q, r), Fraction(2 * p * q, r)
        i, j = rng.sample(range(size), 2)
        g = linalg.identity(size)
        g[i, i] = g[j, j] = normalize(cs)
        g[i, j] = normalize(-sn)
        g[j, i] = normalize(sn)
        c = linalg.matmul(c, g)
    return c


def random_gn(rng, n: int, bound: int = 4) -> np.ndarray:
    from .algebra.scalar import random_rational

    a = random_rational(rng, bound, 3, nonzero=True)
    b = [random_rational(rng, bound, 3) for _ in range(n - 1)]
    avec = [random_rational(rng, bound, 3) for _ in range(n - 2)]
    return gn_from_params(a, b, avec, random_rational_rotation(rng, n - 2))
