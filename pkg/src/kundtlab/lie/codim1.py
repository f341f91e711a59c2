"""Codimension-one subalgebras as hyperplanes ker(phi).

ker(phi) is a subalgebra exactly when phi ^ d phi = 0, where
(d phi)_jk = -sum_m c^m_jk phi_m.  In dimension 3 this is a single
quadratic form in phi, classified here by exact congruence
diagonalization.  Dimension 4 is solved on projective charts with sympy.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from ..algebra import linalg
from ..algebra.scalar import format_scalar, normalize
from .algebra import LieAlgebra, Subspace, is_subalgebra

SEARCH_BOX = 12


def d_phi(lie: LieAlgebra, phi) -> np.ndarray:
    n = lie.dim
    out = np.zeros((n, n), dtype=object)
    for j in range(n):
        for k in range(n):
            out[j, k] = normalize(-sum(lie.c[m, j, k] * phi[m] for m in range(n)))
    return out


def is_codim1_subalgebra(lie: LieAlgebra, phi) -> bool:
    phi = [normalize(x) for x in phi]
    if all(x == 0 for x in phi):
        raise ValueError("zero functional has no hyperplane kernel")
    return is_subalgebra(lie, Subspace.kernel(phi))


@dataclass
class Family:
    """A positive-dimensional set of hyperplanes, parametrized when rational."""

    kind: str
    description: str
    parameters: int
    member: Callable | None = field(default=None, repr=False)

    def example(self):
        if self.member is None:
            return None
        for params in itertools.product(range(-2, 3), repeat=self.parameters):
            phi = self.member(params)
            if phi is not None and any(x != 0 for x in phi):
                return phi
        return None

    def to_json(self) -> dict:
        ex = self.example()
        return {"kind": self.kind, "description": self.description, "parameters": self.parameters,
                "example": None if ex is None else [format_scalar(x) for x in ex]}


@dataclass
class Codim1Result:
    dim: int
    isolated: list = field(default_factory=list)
    families: list = field(default_factory=list)

    def is_empty(self) -> bool:
        return not self.isolated and not self.families

    def subspaces(self) -> list[Subspace]:
        return [Subspace.kernel(phi) for phi in self.isolated]

    def rational_member(self) -> Subspace | None:
        if self.isolated:
            return Subspace.kernel(self.isolated[0])
        for fam in self.families:
            ex = fam.example()
            if ex is not None:
                return Subspace.kernel(ex)
        return None

    def sample(self, rng: random.Random) -> Subspace | None:
        options = [("iso", p) for p in self.isolated]
        options += [("fam", f) for f in self.families if f.member is not None]
        if not options:
            return None
        for _ in range(50):
            kind, obj = rng.choice(options)
            if kind == "iso":
                return Subspace.kernel(obj)
            params = [rng.randint(-4, 4) for _ in range(obj.parameters)]
            phi = obj.member(params)
            if phi is not None and any(x != 0 for x in phi):
                return Subspace.kernel(phi)
        return self.rational_member()

    def to_json(self) -> dict:
        return {"isolated": [[format_scalar(x) for x in p] for p in self.isolated],
                "families": [f.to_json() for f in self.families],
                "empty": self.is_empty()}


def quadratic_form_3d(lie: LieAlgebra) -> np.ndarray:
    """Symmetric Q with phi^T Q phi = (phi ^ d phi)_{123}."""
    c = lie.c
    k = np.zeros((3, 3), dtype=object)
    for m in range(3):
        k[0, m] = -c[m, 1, 2]
        k[1, m] = c[m, 0, 2]
        k[2, m] = -c[m, 0, 1]
    q = np.zeros((3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            q[i, j] = normalize(Fraction(k[i, j] + k[j, i]) / 2)
    return q


def _rational_sqrt(x) -> Fraction | None:
    x = Fraction(x)
    if x < 0:
        return None
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def _apply(p: np.ndarray, psi) -> list:
    return [normalize(sum(p[i, j] * psi[j] for j in range(len(psi)))) for i in range(p.shape[0])]


def _find_rational_point(d, box: int = SEARCH_BOX):
    rng = range(-box, box + 1)
    for total in range(1, 3 * box + 1):
        for a in rng:
            for b in rng:
                c = total - abs(a) - abs(b)
                if c < 0:
                    continue
                for cc in {c, -c}:
                    if (a, b, cc) == (0, 0, 0):
                        continue
                    if d[0] * a * a + d[1] * b * b + d[2] * cc * cc == 0:
                        return (a, b, cc)
    return None


def _legendre_point(d):
    """Rational zero of sum d_i x_i^2 by Legendre's method, or None if there is none."""
    from sympy import symbols
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal

    den = math.lcm(*(Fraction(x).denominator for x in d))
    x = symbols("x0:3")
    expr = sum(int(Fraction(d[i]) * den) * x[i] ** 2 for i in range(3))
    sol = diop_ternary_quadratic_normal(expr)
    if sol[0] is None:
        return None
    return tuple(int(v) for v in sol)


def _codim1_3d(lie: LieAlgebra) -> Codim1Result:
    q = quadratic_form_3d(lie)
    p, d = linalg.congruence_diagonalize(q)
    res = Codim1Result(3)
    nz = [i for i in range(3) if d[i] != 0]
    zs = [i for i in range(3) if d[i] == 0]
    if not nz:
        res.families.append(Family("all", "every hyperplane", 3, lambda s: _apply(p, s)))
    elif len(nz) == 1:
        i = nz[0]

        def pencil(s, i=i):
            psi = [0, 0, 0]
            psi[zs[0]], psi[zs[1]] = s[0], s[1]
            return _apply(p, psi)

        res.families.append(Family("pencil", "hyperplanes containing a fixed line", 2, pencil))
    elif len(nz) == 2:
        i, j = nz
        k = zs[0]
        apex = [0, 0, 0]
        apex[k] = 1
        if d[i] * d[j] > 0:
            res.isolated.append(_apply(p, apex))
        else:
            r = _rational_sqrt(Fraction(-d[j]) / d[i])
            if r is None:
                res.isolated.append(_apply(p, apex))
                res.families.append(Family("irrational-pencils",
                                           "two real pencils with irrational slope meeting at the isolated member",
                                           2, None))
            else:
                for sign in (1, -1):
                    def line(s, sign=sign):
                        psi = [0, 0, 0]
                        psi[j] = s[0]
                        psi[i] = normalize(sign * r * s[0])
                        psi[k] = s[1]
                        return _apply(p, psi)

                    res.families.append(Family("pencil", "hyperplanes through one of two lines", 2, line))
    else:
        if all(x > 0 for x in d) or all(x < 0 for x in d):
            return res
        pt = _find_rational_point(d)
        if pt is None:
            pt = _legendre_point(d)
        if pt is None:
            res.families.append(Family("conic", "real conic without a rational point in the search box",
                                       1, None))
            return res
        pt = list(pt)

        def form(x, y):
            return sum(d[t] * x[t] * y[t] for t in range(3))

        comp = [e for e in ([1, 0, 0], [0, 1, 0], [0, 0, 1])
                if linalg.rank(np.array([pt, e], dtype=object)) == 2][:2]

        def conic(s, pt=pt, comp=comp):
            w = [s[0] * comp[0][t] + s[1] * comp[1][t] for t in range(3)]
            cw = form(w, w)
            bw = form(pt, w)
            psi = [normalize(cw * pt[t] - 2 * bw * w[t]) for t in range(3)]
            if all(x == 0 for x in psi):
                return None
            return _apply(p, psi)

        res.families.append(Family("conic", "rationally parametrized conic of hyperplanes", 2, conic))
    return res


def _wedge_components(lie: LieAlgebra, phi) -> list:
    n = lie.dim
    dp = d_phi(lie, phi)
    out = []
    for a, b, c in itertools.combinations(range(n), 3):
        out.append(phi[a] * dp[b, c] - phi[b] * dp[a, c] + phi[c] * dp[a, b])
    return out


def _codim1_4d(lie: LieAlgebra) -> Codim1Result:
    import sympy

    res = Codim1Result(4)
    syms = sympy.symbols("p0:4")
    for chart in range(4):
        phi = [sympy.Integer(0)] * chart + [sympy.Integer(1)] + list(syms[chart + 1:])
        unknowns = list(syms[chart + 1:])
        c = [[[sympy.Rational(str(lie.c[m, j, k])) for k in range(4)] for j in range(4)]
             for m in range(4)]
        eqs = []
        for a, b, cc in itertools.combinations(range(4), 3):
            def dp(j, k):
                return -sum(c[m][j][k] * phi[m] for m in range(4))
            eqs.append(sympy.expand(phi[a] * dp(b, cc) - phi[b] * dp(a, cc) + phi[cc] * dp(a, b)))
        eqs = [e for e in eqs if e != 0]
        if not eqs:
            free = len(unknowns)
            res.families.append(Family("chart", f"all functionals with phi_{chart + 1} = 1", free,
                                       _chart_member(phi, unknowns)))
            continue
        if not unknowns:
            continue
        sols = sympy.solve(eqs, unknowns, dict=True)
        for sol in sols:
            exprs = [sympy.simplify(e.subs(sol)) for e in phi]
            if any(e.has(sympy.I) for e in exprs):
                continue
            free = sorted(set().union(*[e.free_symbols for e in exprs]), key=str)
            if not free:
                if all(e.is_Rational for e in exprs):
                    res.isolated.append([normalize(Fraction(int(e.p), int(e.q))) for e in exprs])
                else:
                    res.families.append(Family("irrational-point", str(exprs), 0, None))
                continue
            rational = all(_is_rational_expr(e) for e in exprs)
            res.families.append(Family("solution-set", ", ".join(str(e) for e in exprs), len(free),
                                       _chart_member(exprs, free) if rational else None))
    return res


def _is_rational_expr(e) -> bool:
    import sympy

    return (all(x.is_Rational for x in e.atoms(sympy.Number))
            and all(p.exp.is_Integer for p in e.atoms(sympy.Pow)))


def _chart_member(exprs, free):
    import sympy

    def member(params):
        sub = {s: sympy.Rational(int(p)) for s, p in zip(free, params)}
        try:
            vals = [sympy.nsimplify(sympy.sympify(e).subs(sub)) for e in exprs]
        except ZeroDivisionError:
            return None
        if any(not v.is_Rational for v in vals):
            return None
        return [normalize(Fraction(int(v.p), int(v.q))) for v in vals]

    return member


def codim1_subalgebras(lie: LieAlgebra) -> Codim1Result:
    """All hyperplane subalgebras for dim <= 4 as isolated members plus families."""
    n = lie.dim
    if n == 1:
        return Codim1Result(1, isolated=[[1]])
    if n == 2:
        return Codim1Result(2, families=[Family("all", "every line", 2, lambda s: [s[0], s[1]])])
    if n == 3:
        return _codim1_3d(lie)
    if n == 4:
        return _codim1_4d(lie)
    raise ValueError(f"enumeration supports dim <= 4; use is_codim1_subalgebra for dim {n}")
