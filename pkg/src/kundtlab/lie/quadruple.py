"""Invariant quadruples (a, b, gram, beta) on a Lie algebra with isotropy h.

The Gram matrix is taken on the greedy representatives of b/a drawn from
b's basis columns (see :func:`quotient_reps`); beta is its value on the
a/h representative paired with the k/b representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..algebra import linalg
from ..algebra.scalar import format_scalar, normalize
from .algebra import (LieAlgebra, Subspace, adjoint_invariant_beta, adjoint_invariant_gram,
                      adjoint_invariant_subspace, bracket_span, complement_reps, induced_map,
                      is_nilpotent, is_skew, is_subalgebra, quotient_coordinates,
                      validate_lie_algebra)


@dataclass
class InvariantQuadruple:
    a: Subspace
    b: Subspace
    gram: np.ndarray
    beta: object

    def __post_init__(self):
        self.gram = linalg.as_matrix(self.gram) if np.size(self.gram) else np.zeros((0, 0), dtype=object)
        self.beta = normalize(self.beta)

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json(),
                "gram": [[format_scalar(x) for x in row] for row in self.gram.tolist()],
                "beta": format_scalar(self.beta)}


@dataclass
class NonExistence:
    reason: str

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"nonexistence": self.reason}


@dataclass
class ClassificationReport:
    gn_checks: dict = field(default_factory=dict)
    kundt_checks: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def gn_valid(self) -> bool:
        return all(self.gn_checks.values())

    @property
    def kundt_valid(self) -> bool:
        return self.gn_valid and bool(self.kundt_checks) and all(self.kundt_checks.values())

    def __bool__(self) -> bool:
        return self.kundt_valid if self.kundt_checks else self.gn_valid

    def to_json(self) -> dict:
        from ..report import jsonable

        return {"gn_valid": self.gn_valid, "gn_checks": dict(self.gn_checks),
                "kundt_valid": self.kundt_valid, "kundt_checks": dict(self.kundt_checks),
                "witnesses": jsonable(self.witnesses)}


def is_gn_quadruple(q: InvariantQuadruple, h: Subspace, lie: LieAlgebra) -> ClassificationReport:
    rep = ClassificationReport()
    checks = rep.gn_checks
    n = lie.dim
    checks["lie-algebra"] = bool(validate_lie_algebra(lie))
    checks["h-subalgebra"] = is_subalgebra(lie, h)
    checks["nesting"] = q.a.contains_subspace(h) and q.b.contains_subspace(q.a)
    checks["dim-a"] = q.a.dim == h.dim + 1
    checks["dim-b"] = q.b.dim == n - 1
    checks["ad-invariant-a"] = adjoint_invariant_subspace(q.a, h, lie)
    checks["ad-invariant-b"] = adjoint_invariant_subspace(q.b, h, lie)
    m = q.b.dim - q.a.dim
    checks["gram-shape"] = q.gram.shape == (m, m)
    sym = checks["gram-shape"] and linalg.arrays_equal(q.gram, q.gram.T)
    checks["gram-positive-definite"] = bool(sym and linalg.is_positive_definite(q.gram))
    checks["beta-nonzero"] = q.beta != 0
    structural = all(checks[k] for k in ("nesting", "dim-a", "dim-b", "ad-invariant-a",
                                        "ad-invariant-b", "gram-shape", "h-subalgebra"))
    if structural:
        checks["ad-invariant-gram"] = adjoint_invariant_gram(q.gram, q.a, q.b, h, lie)
        checks["ad-invariant-beta"] = adjoint_invariant_beta(q.beta, q.a, q.b, h, lie)
    else:
        checks["ad-invariant-gram"] = False
        checks["ad-invariant-beta"] = False
    for k, v in checks.items():
        if not v:
            rep.witnesses.append({"failed": k})
    return rep


def is_kundt_quadruple(q: InvariantQuadruple, h: Subspace, lie: LieAlgebra) -> ClassificationReport:
    rep = is_gn_quadruple(q, h, lie)
    if not rep.gn_valid:
        rep.kundt_checks["b-subalgebra"] = False
        rep.kundt_checks["skew-adjoint"] = False
        return rep
    closed = is_subalgebra(lie, q.b)
    rep.kundt_checks["b-subalgebra"] = closed
    if not closed:
        br = bracket_span(lie, q.b, q.b)
        rep.witnesses.append({"failed": "b-subalgebra",
                              "escaping": [list(v) for v in br.vectors() if not q.b.contains(v)]})
        rep.kundt_checks["skew-adjoint"] = False
        return rep
    skew = True
    for x in q.a.vectors():
        m = induced_map(lie, x, q.b, q.a)
        if not is_skew(q.gram, m):
            skew = False
            rep.witnesses.append({"failed": "skew-adjoint", "A": list(x), "M": m.tolist()})
            break
    rep.kundt_checks["skew-adjoint"] = skew
    return rep


def example_3dim(lie: LieAlgebra):
    """A left-invariant Kundt quadruple (h = 0) on a 3-dimensional algebra.

    Picks a codimension-1 subalgebra b, takes a = [b, b] when b is not
    abelian and otherwise a line of b (inside [k, k] when possible), with
    gram = (1) and beta = 1.
    """
    from .codim1 import codim1_subalgebras

    if lie.dim != 3:
        raise ValueError("example_3dim needs a 3-dimensional algebra")
    subs = codim1_subalgebras(lie)
    b = subs.rational_member()
    if b is None:
        if subs.is_empty():
            return NonExistence("no codimension-1 subalgebra")
        return NonExistence("codimension-1 subalgebras exist but none was found over Q")
    derived = bracket_span(lie, b, b)
    if derived.dim == 0:
        # any line will do; prefer one inside [k, k] so Heisenberg gets its center
        whole = Subspace.whole(3)
        inside = [v for v in bracket_span(lie, whole, whole).vectors() if b.contains(v)]
        a = Subspace.span(3, [(inside or b.vectors())[0]])
    else:
        a = derived
    q = InvariantQuadruple(a, b, [[1]], 1)
    rep = is_kundt_quadruple(q, Subspace.zero(3), lie)
    if not rep.kundt_valid:
        raise AssertionError(f"recipe produced a non-Kundt quadruple: {rep.to_json()}")
    return q


def nilpotent_conditions(lie: LieAlgebra, q: InvariantQuadruple) -> dict:
    """Bracket inclusions [a, b] in a and [a, n] in b, plus the derived pairing identities."""
    if not is_nilpotent(lie):
        raise ValueError("algebra is not nilpotent")
    whole = Subspace.whole(lie.dim)
    ab = bracket_span(lie, q.a, q.b)
    an = bracket_span(lie, q.a, whole)
    z = complement_reps(lie.dim, q.b)
    gram_ok = True
    beta_ok = True
    for x in q.a.vectors():
        m = induced_map(lie, x, q.b, q.a) if q.b.contains_subspace(ab) else None
        if m is None or not is_skew(q.gram, m):
            gram_ok = False
        for zz in z:
            coords = quotient_coordinates(lie.bracket(x, zz), q.b, z)
            if coords is None or normalize(q.beta * coords[0]) != 0:
                beta_ok = False
    return {
        "[a,b] in a": q.a.contains_subspace(ab),
        "[a,n] in b": q.b.contains_subspace(an),
        "gram pairing": gram_ok,
        "beta pairing": beta_ok,
    }


def random_gram(rng, m: int, bound: int = 3) -> np.ndarray:
    """Random positive-definite rational matrix L L^T + I."""
    low = np.array([[rng.randint(-bound, bound) if j <= i else 0 for j in range(m)]
                    for i in range(m)], dtype=object)
    return linalg.matmul(low, low.T) + linalg.identity(m)


def random_quadruple(rng, lie: LieAlgebra, closed: bool = True, tries: int = 50, subalgebras=None):
    """A GN-valid quadruple with h = 0.

    With ``closed`` the hyperplane b is drawn from the codimension-1
    subalgebras (pass ``subalgebras`` to reuse a computed result);
    otherwise it is the kernel of a random functional.
    """
    from .codim1 import codim1_subalgebras

    n = lie.dim
    subs = subalgebras
    if subs is None and closed and n <= 4:
        subs = codim1_subalgebras(lie)
    if closed and (subs is None or subs.is_empty()):
        return None
    for _ in range(tries):
        if closed:
            b = subs.sample(rng)
            if b is None:
                return None
        else:
            phi = [rng.randint(-2, 2) for _ in range(n)]
            if not any(phi):
                continue
            b = Subspace.kernel(phi)
        vs = b.vectors()
        line = sum((v * rng.randint(-2, 2) for v in vs), np.zeros(n, dtype=object))
        if all(x == 0 for x in line):
            continue
        a = Subspace.span(n, [line])
        beta = rng.choice([1, -1, 2, Fraction(1, 2), -3])
        q = InvariantQuadruple(a, b, random_gram(rng, n - 2), beta)
        if is_gn_quadruple(q, Subspace.zero(n), lie).gn_valid:
            return q
    return None
