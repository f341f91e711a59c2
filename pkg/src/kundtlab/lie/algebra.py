"""Finite-dimensional Lie algebras over Q given by structure constants.

``c[k, i, j]`` is the coefficient of e_k in [e_i, e_j] (0-based here; the
JSON format is 1-based).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..algebra import linalg
from ..algebra.scalar import StructuralError, normalize
from ..report import Violation


class LieAlgebra:
    __slots__ = ("dim", "c", "name")

    def __init__(self, dim: int, c=None, name: str = ""):
        self.dim = dim
        if c is None:
            c = np.zeros((dim, dim, dim), dtype=object)
        c = np.asarray(c, dtype=object)
        if c.shape != (dim, dim, dim):
            raise StructuralError(f"structure constants must have shape {(dim,) * 3}")
        out = np.zeros(c.shape, dtype=object)
        for idx, x in np.ndenumerate(c):
            out[idx] = normalize(x)
        self.c = out
        self.name = name

    @classmethod
    def from_brackets(cls, dim: int, brackets, name: str = "") -> "LieAlgebra":
        """Brackets as (i, j, k, coeff) meaning [e_i, e_j] gets coeff * e_k, 0-based.

        The antisymmetric partner is filled in; listing both orders with
        inconsistent values raises.
        """
        c = np.zeros((dim, dim, dim), dtype=object)
        seen = {}
        for i, j, k, coef in brackets:
            coef = normalize(coef)
            for key, val in (((k, i, j), coef), ((k, j, i), -coef)):
                if key in seen and seen[key] != val:
                    raise StructuralError(
                        f"brackets violate antisymmetry at [e{key[1] + 1}, e{key[2] + 1}] -> e{key[0] + 1}")
                seen[key] = val
                c[key] = val
        return cls(dim, c, name)

    def brackets(self) -> list[tuple[int, int, int, object]]:
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if self.c[k, i, j] != 0:
                        out.append((i, j, k, self.c[k, i, j]))
        return out

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        out = np.zeros(self.dim, dtype=object)
        for i in range(self.dim):
            if x[i] == 0:
                continue
            for j in range(self.dim):
                if y[j] == 0:
                    continue
                out = out + self.c[:, i, j] * (x[i] * y[j])
        return np.array([normalize(v) for v in out], dtype=object)

    def basis(self) -> list[np.ndarray]:
        return [np.array([1 if j == i else 0 for j in range(self.dim)], dtype=object)
                for i in range(self.dim)]

    def ad(self, x) -> np.ndarray:
        """Matrix of [x, -]."""
        cols = [self.bracket(x, e) for e in self.basis()]
        return np.array([list(col) for col in cols], dtype=object).T.copy()

    def change_basis(self, p) -> "LieAlgebra":
        """Structure constants in the basis given by the columns of ``p``."""
        p = linalg.as_matrix(p)
        p_inv = linalg.inverse(p)
        cols = [p[:, i] for i in range(self.dim)]
        c = np.zeros((self.dim,) * 3, dtype=object)
        for i in range(self.dim):
            for j in range(self.dim):
                br = self.bracket(cols[i], cols[j])
                c[:, i, j] = linalg.matmul(p_inv, br.reshape(-1, 1))[:, 0]
        return LieAlgebra(self.dim, c, self.name)

    def __repr__(self):
        return f"LieAlgebra({self.name or self.dim}, {self.brackets()})"


def validate_lie_algebra(lie: LieAlgebra) -> bool | Violation:
    n, c = lie.dim, lie.c
    for k, i, j in itertools.product(range(n), repeat=3):
        if c[k, i, j] != -c[k, j, i]:
            return Violation("lie-algebra", "antisymmetry", "c^k_ij != -c^k_ji",
                             {"i": i + 1, "j": j + 1, "k": k + 1})
    e = lie.basis()
    for i, j, k in itertools.combinations(range(n), 3):
        jac = (lie.bracket(lie.bracket(e[i], e[j]), e[k])
               + lie.bracket(lie.bracket(e[j], e[k]), e[i])
               + lie.bracket(lie.bracket(e[k], e[i]), e[j]))
        if any(v != 0 for v in jac):
            return Violation("lie-algebra", "jacobi", "Jacobi identity fails",
                             {"triple": [i + 1, j + 1, k + 1], "value": list(jac)})
    return True


@dataclass(frozen=True)
class Subspace:
    """Column basis of a subspace of Q^ambient."""

    ambient: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=object)
        if b.size == 0:
            b = np.zeros((self.ambient, 0), dtype=object)
        if b.ndim != 2 or b.shape[0] != self.ambient:
            raise StructuralError(f"basis must have {self.ambient} rows")
        if b.shape[1] and linalg.rank(b) != b.shape[1]:
            raise StructuralError("basis columns are linearly dependent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def span(cls, ambient: int, vectors) -> "Subspace":
        """Greedy independent subset of ``vectors`` (in order)."""
        chosen = []
        for v in vectors:
            v = np.array([normalize(x) for x in v], dtype=object)
            if all(x == 0 for x in v):
                continue
            if not chosen or linalg.rank(np.array(chosen + [list(v)], dtype=object)) > len(chosen):
                chosen.append(list(v))
        if not chosen:
            return cls(ambient, np.zeros((ambient, 0), dtype=object))
        return cls(ambient, np.array(chosen, dtype=object).T.copy())

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, np.zeros((ambient, 0), dtype=object))

    @classmethod
    def whole(cls, ambient: int) -> "Subspace":
        return cls(ambient, linalg.identity(ambient))

    @classmethod
    def kernel(cls, functional) -> "Subspace":
        phi = np.array([[normalize(x) for x in functional]], dtype=object)
        ns = linalg.nullspace(phi)
        return cls.span(phi.shape[1], ns)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def vectors(self) -> list[np.ndarray]:
        return [self.basis[:, i] for i in range(self.dim)]

    def contains(self, v) -> bool:
        if all(normalize(x) == 0 for x in v):
            return True
        if self.dim == 0:
            return False
        return linalg.in_span(self.vectors(), v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.dim == other.dim
                and self.contains_subspace(other))

    __hash__ = None

    def coordinates(self, v):
        """Coefficients of v in this basis, or None if v is outside."""
        if self.dim == 0:
            return [] if all(normalize(x) == 0 for x in v) else None
        sol = linalg.solve_linear(self.basis, [normalize(x) for x in v])
        return None if sol is None else list(sol.solution)

    def to_json(self) -> list:
        from ..algebra.scalar import format_scalar

        return [[format_scalar(x) for x in v] for v in self.vectors()]


def bracket_span(lie: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace.span(lie.dim, [lie.bracket(x, y) for x in a.vectors() for y in b.vectors()])


def is_subalgebra(lie: LieAlgebra, s: Subspace) -> bool:
    return s.contains_subspace(bracket_span(lie, s, s))


def lower_central_series(lie: LieAlgebra) -> list[Subspace]:
    whole = Subspace.whole(lie.dim)
    series = [whole]
    while True:
        nxt = bracket_span(lie, whole, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def is_nilpotent(lie: LieAlgebra) -> bool:
    return lower_central_series(lie)[-1].dim == 0


def quotient_reps(big: Subspace, small: Subspace) -> list[np.ndarray]:
    """Greedy representatives of big/small taken from big's basis columns."""
    chosen = list(small.vectors())
    reps = []
    for v in big.vectors():
        if not chosen or not linalg.in_span(chosen, v):
            chosen.append(v)
            reps.append(v)
    return reps


def complement_reps(ambient: int, s: Subspace) -> list[np.ndarray]:
    """Standard basis vectors completing s to the whole space."""
    whole = Subspace.whole(ambient)
    return quotient_reps(whole, s)


def quotient_coordinates(v, small: Subspace, reps) -> list | None:
    """Coefficients of v on ``reps`` modulo ``small``; None if v is outside small + span(reps)."""
    cols = small.vectors() + list(reps)
    if not cols:
        return [] if all(normalize(x) == 0 for x in v) else None
    mat = np.array([list(c) for c in cols], dtype=object).T.copy()
    sol = linalg.solve_linear(mat, [normalize(x) for x in v])
    if sol is None:
        return None
    return list(sol.solution[small.dim:])


def induced_map(lie: LieAlgebra, x, big: Subspace, small: Subspace) -> np.ndarray:
    """Matrix of [x, -] on big/small in the greedy representatives."""
    reps = quotient_reps(big, small)
    m = np.zeros((len(reps), len(reps)), dtype=object)
    for j, r in enumerate(reps):
        coords = quotient_coordinates(lie.bracket(x, r), small, reps)
        if coords is None:
            raise ValueError("[x, -] does not preserve the subspace")
        for i, val in enumerate(coords):
            m[i, j] = val
    return m


def adjoint_invariant_subspace(s: Subspace, h: Subspace, lie: LieAlgebra) -> bool:
    if s.ambient != lie.dim or h.ambient != lie.dim:
        raise StructuralError("subspace does not live in the algebra")
    return all(s.contains(lie.bracket(y, v)) for y in h.vectors() for v in s.vectors())


def is_skew(gram, m) -> bool:
    gram = np.asarray(gram, dtype=object)
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return True
    return linalg.is_zero_array(linalg.matmul(gram, m) + linalg.matmul(m.T, gram))


def adjoint_invariant_gram(gram, a: Subspace, b: Subspace, h: Subspace, lie: LieAlgebra) -> bool:
    return all(is_skew(gram, induced_map(lie, y, b, a)) for y in h.vectors())


def beta_weights(lie: LieAlgebra, y, a: Subspace, b: Subspace, h: Subspace) -> tuple:
    """(mu, nu): eigenvalues of ad(y) on the lines a/h and k/b."""
    a_rep = quotient_reps(a, h)
    z_rep = complement_reps(lie.dim, b)
    if len(a_rep) != 1 or len(z_rep) != 1:
        raise ValueError("a/h and k/b must both be one-dimensional")
    mu = quotient_coordinates(lie.bracket(y, a_rep[0]), h, a_rep)
    nu = quotient_coordinates(lie.bracket(y, z_rep[0]), b, z_rep)
    if mu is None or nu is None:
        raise ValueError("ad(y) does not preserve the flag")
    return mu[0], nu[0]


def adjoint_invariant_beta(beta, a: Subspace, b: Subspace, h: Subspace, lie: LieAlgebra) -> bool:
    """ad(y) acts on (a/h) (x) (k/b) by mu + nu; invariance kills beta * (mu + nu)."""
    for y in h.vectors():
        mu, nu = beta_weights(lie, y, a, b, h)
        if normalize(beta * (mu + nu)) != 0:
            return False
    return True


def adjoint_invariant(obj, h: Subspace, lie: LieAlgebra, a: Subspace | None = None,
                      b: Subspace | None = None) -> bool:
    """Infinitesimal ad(h)-invariance of a subspace, a Gram form on b/a, or beta."""
    if isinstance(obj, Subspace):
        return adjoint_invariant_subspace(obj, h, lie)
    if a is None or b is None:
        raise ValueError("Gram forms and beta need the flag (a, b)")
    if np.ndim(obj) == 2:
        return adjoint_invariant_gram(obj, a, b, h, lie)
    return adjoint_invariant_beta(normalize(obj), a, b, h, lie)


def random_basis_change(rng, n: int, bound: int = 3) -> np.ndarray:
    """Random invertible integer matrix; columns are the new basis vectors."""
    while True:
        p = np.array([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)], dtype=object)
        if linalg.det(p) != 0:
            return p
