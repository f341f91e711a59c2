"""Degenerate Kundt metrics in adapted coordinates and their invariants.

The family is

    g = 2 du (dv + H du + W_i dx^i) + gt_ij dx^i dx^j
    H = v^2 H2 + v H1 + H0,   W_i = v W1_i + W0_i

with every coefficient independent of v.  The invariants are read off with
the symmetric product ``a (x)_S b = a (x) b + b (x) a``:

    (L_X)^2 g = Psi * (X' (x)_S X')      L_X g = X' (x)_S omega

where X' is the natural dual of X.  Phi raises omega restricted to the
screen with gperp, and Theta = gperp(Phi, Phi).  For the family above and
X = d_v this gives Psi = 2 H2 and Phi^i = gt^ij W1_j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .algebra import linalg
from .algebra.poly import Poly
from .algebra.ratfunc import is_zero
from .algebra.scalar import StructuralError, random_rational
from .chart.fields import (ChartMetric, ChartNullQuadruple, apply, coordinate_field,
                           default_coords, field_boost_check, lie_derivative, lift,
                           natural_dual, pair, ratio, standard_quadruple)
from .chart.kundt import kundt_vector_check, nil_killing_check
from .report import Violation


@dataclass
class DegenerateKundtData:
    n: int
    H: tuple  # (H0, H1, H2)
    W: list   # [(W0_i, W1_i)] for i = 1..n-2
    gt: np.ndarray
    coords: tuple = ()

    def __post_init__(self):
        if self.n < 3:
            raise StructuralError("dimension must be at least 3")
        if not self.coords:
            self.coords = default_coords(self.n)
        self.coords = tuple(self.coords)
        c = self.coords
        self.H = tuple(lift(h, c) for h in self.H)
        self.W = [tuple(lift(w, c) for w in pair_) for pair_ in self.W]
        self.gt = np.array([[lift(x, c) for x in row] for row in self.gt], dtype=object)
        if len(self.H) != 3:
            raise StructuralError("H needs the three coefficients H0, H1, H2")
        if len(self.W) != self.n - 2 or any(len(w) != 2 for w in self.W):
            raise StructuralError(f"W needs {self.n - 2} pairs (W0_i, W1_i)")
        if self.gt.shape != (self.n - 2, self.n - 2):
            raise StructuralError(f"gt must be {(self.n - 2, self.n - 2)}")
        if not linalg.arrays_equal(self.gt, self.gt.T):
            raise StructuralError("gt is not symmetric")
        vname = c[1]
        for name, x in self._fields():
            if isinstance(x, Poly) and x.degree_in(vname) > 0:
                raise StructuralError(f"{name} depends on {vname}")

    def _fields(self):
        for k, h in enumerate(self.H):
            yield f"H{k}", h
        for i, (w0, w1) in enumerate(self.W, start=1):
            yield f"W0_{i}", w0
            yield f"W1_{i}", w1
        for (i, j), x in np.ndenumerate(self.gt):
            yield f"gt_{i + 1}{j + 1}", x

    def v(self) -> Poly:
        return Poly.var(self.coords, self.coords[1])

    def H_full(self):
        v = self.v()
        h0, h1, h2 = self.H
        return v * v * h2 + v * h1 + h0

    def W_full(self) -> list:
        v = self.v()
        return [v * w1 + w0 for w0, w1 in self.W]


def assemble_metric(d: DegenerateKundtData) -> ChartMetric:
    n = d.n
    g = linalg.zeros(n)
    g[0, 1] = g[1, 0] = 1
    g[0, 0] = d.H_full() * 2
    for i, w in enumerate(d.W_full()):
        g[0, 2 + i] = g[2 + i, 0] = w
    g[2:, 2:] = d.gt
    return ChartMetric(d.coords, g)


def dv(coords) -> np.ndarray:
    return coordinate_field(coords, 1)


def degenerate_check(g: ChartMetric, x, q: ChartNullQuadruple) -> bool | Violation:
    """(L_X)^2 g has boost order <= -2 and (L_X)^3 g = 0."""
    x = np.asarray(x, dtype=object)
    pre = kundt_vector_check(x, g, q.transversal)
    if not pre:
        raise ValueError(f"X is not a Kundt vector: {pre.condition} fails")
    l2 = lie_derivative(x, g.tensor(), g.coords, 2)
    bad = field_boost_check(l2, q, -2)
    if bad is not None:
        idx, w, val = bad
        return Violation("degenerate", "boost-order", "(L_X)^2 g has boost order > -2",
                         {"frame_index": list(idx), "weight": w, "value": val})
    l3 = lie_derivative(x, l2, g.coords, 1)
    if not l3.is_zero():
        nz = next(idx for idx, v in np.ndenumerate(l3.components) if not is_zero(v))
        return Violation("degenerate", "third-derivative", "(L_X)^3 g != 0",
                         {"index": [int(i) for i in nz], "value": l3.components[nz]})
    return True


def _sym_product(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return np.multiply.outer(a, b) + np.multiply.outer(b, a)


def psi(g: ChartMetric, x, q: ChartNullQuadruple):
    """The factor Psi with (L_X)^2 g = Psi * (X' (x)_S X')."""
    x = np.asarray(x, dtype=object)
    alpha = natural_dual(x, q)
    l2 = lie_derivative(x, g.tensor(), g.coords, 2).components
    base = _sym_product(alpha, alpha)
    pivot = next(idx for idx, v in np.ndenumerate(base) if not is_zero(v))
    factor = ratio(l2[pivot], base[pivot])
    if not linalg.is_zero_array(l2 - base * factor):
        raise ValueError("(L_X)^2 g is not proportional to X' (x)_S X'; metric not degenerate")
    return factor


def omega(g: ChartMetric, x, q: ChartNullQuadruple) -> tuple[np.ndarray, np.ndarray]:
    """(alpha, omega) with L_X g = alpha (x)_S omega, omega given in frame components."""
    x = np.asarray(x, dtype=object)
    pre = nil_killing_check(x, g, q)
    if not pre:
        raise ValueError(f"X is not nil-Killing: {pre.condition} fails")
    alpha = natural_dual(x, q)
    lg = lie_derivative(x, g.tensor(), g.coords).components
    frame = [q.lam, q.transversal] + q.screen
    y = q.transversal
    ay = sum((alpha[a] * y[a] for a in range(g.n) if not is_zero(y[a])), 0)
    w = np.empty(g.n, dtype=object)
    w[1] = ratio(pair(lg, y, y), ay * 2)
    for k, e in enumerate(frame):
        if k != 1:
            w[k] = ratio(pair(lg, y, e), ay)
    # verify the decomposition on the whole frame
    for i, a in enumerate(frame):
        for j, b in enumerate(frame):
            if j < i:
                continue
            aa = sum((alpha[c] * a[c] for c in range(g.n) if not is_zero(a[c])), 0)
            ab = sum((alpha[c] * b[c] for c in range(g.n) if not is_zero(b[c])), 0)
            rhs = aa * w[j] + w[i] * ab
            if not is_zero(pair(lg, a, b) - rhs):
                raise ValueError("L_X g does not factor through the natural dual")
    return alpha, w


def phi(g: ChartMetric, x, q: ChartNullQuadruple) -> np.ndarray:
    """Screen components of Phi with respect to the Lambda representatives."""
    _, w = omega(g, x, q)
    screen_omega = w[2:]
    ginv = linalg.inverse(q.gperp) if q.n > 2 else q.gperp
    m = q.n - 2
    out = np.empty(m, dtype=object)
    for i in range(m):
        out[i] = sum((ginv[i, j] * screen_omega[j] for j in range(m)
                      if not is_zero(ginv[i, j]) and not is_zero(screen_omega[j])), 0)
    return out


def theta(g: ChartMetric, x, q: ChartNullQuadruple):
    p = phi(g, x, q)
    return pair(q.gperp, p, p)


def automorphism_invariance_check(psi_value, x, coords) -> bool:
    return is_zero(apply(np.asarray(x, dtype=object), psi_value, coords))


def quadruple_for(d: DegenerateKundtData) -> ChartNullQuadruple:
    """Standard quadruple whose gperp is gt on the coordinate screen fields."""
    q = standard_quadruple(d.coords)
    return ChartNullQuadruple(d.coords, q.lam, q.Lambda, d.gt, 1, q.transversal)


def invariants(d: DegenerateKundtData) -> dict:
    g = assemble_metric(d)
    q = quadruple_for(d)
    x = dv(d.coords)
    ok = degenerate_check(g, x, q)
    out = {"degenerate": bool(ok)}
    if not ok:
        out["violation"] = ok
        return out
    p = psi(g, x, q)
    f = phi(g, x, q)
    out.update(psi=p, phi=f, theta=pair(q.gperp, f, f),
               psi_invariant=automorphism_invariance_check(p, x, d.coords))
    return out


def random_poly(rng: random.Random, coords, degree: int, terms: int = 3,
                skip=(1,), constant: bool = True) -> Poly:
    """Random polynomial avoiding the variables at positions ``skip``."""
    free = [i for i in range(len(coords)) if i not in skip]
    out = {}
    for _ in range(terms):
        e = [0] * len(coords)
        for _ in range(rng.randint(0 if constant else 1, degree)):
            e[rng.choice(free)] += 1
        out[tuple(e)] = random_rational(rng, 3, 2)
    return Poly(coords, out)


def random_data(rng: random.Random, n: int = 4, degree: int = 3) -> DegenerateKundtData:
    coords = default_coords(n)
    h = tuple(random_poly(rng, coords, degree) for _ in range(3))
    w = [(random_poly(rng, coords, degree), random_poly(rng, coords, degree)) for _ in range(n - 2)]
    m = n - 2
    gt = np.empty((m, m), dtype=object)
    for i in range(m):
        for j in range(i, m):
            p = random_poly(rng, coords, min(degree, 2), 2, constant=False)
            gt[i, j] = gt[j, i] = p + (2 if i == j else 0)
    return DegenerateKundtData(n, h, w, gt, coords)
