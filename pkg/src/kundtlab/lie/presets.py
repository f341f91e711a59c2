"""Built-in Lie algebras and hand-coded left-invariant frames on their groups.

The solvable Bianchi presets let e3 act on span{e1, e2} by a matrix M:
[e3, e1] = M11 e1 + M21 e2 and [e3, e2] = M12 e1 + M22 e2.
"""

from __future__ import annotations

import numpy as np

from ..algebra import linalg
from ..algebra.poly import Poly
from ..algebra.ratfunc import is_zero, parts, ratfunc
from ..algebra.scalar import normalize
from ..chart.fields import (ChartMetric, ChartNullQuadruple, apply, bracket, lift)
from .algebra import (LieAlgebra, Subspace, complement_reps, is_subalgebra, quotient_coordinates,
                      quotient_reps)
from .quadruple import InvariantQuadruple, is_gn_quadruple


def _solvable(name: str, m) -> LieAlgebra:
    return LieAlgebra.from_brackets(3, [
        (2, 0, 0, m[0][0]), (2, 0, 1, m[1][0]),
        (2, 1, 0, m[0][1]), (2, 1, 1, m[1][1]),
    ], name)


def abelian(dim: int = 3) -> LieAlgebra:
    return LieAlgebra(dim, name="abelian")


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, [(0, 1, 2, 1)], "heisenberg")


def sl2() -> LieAlgebra:
    """Basis (H, E, F)."""
    return LieAlgebra.from_brackets(3, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], "sl2")


def su2() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)], "su2")


def filiform4() -> LieAlgebra:
    return LieAlgebra.from_brackets(4, [(0, 1, 2, 1), (0, 2, 3, 1)], "filiform4")


def bianchi_presets() -> dict[str, LieAlgebra]:
    """The nine Bianchi types; the one-parameter families use h = 2 (VI) and h = 1 (VII)."""
    return {
        "I": abelian(3),
        "II": heisenberg(),
        "III": _solvable("III", [[1, 0], [0, 0]]),
        "IV": _solvable("IV", [[1, 1], [0, 1]]),
        "V": _solvable("V", [[1, 0], [0, 1]]),
        "VI_h": _solvable("VI_h", [[1, 0], [0, 2]]),
        "VII_h": _solvable("VII_h", [[1, -1], [1, 1]]),
        "VIII": sl2(),
        "IX": su2(),
    }


def named_algebra(name: str) -> LieAlgebra:
    table = {"abelian": abelian(3), "heisenberg": heisenberg(), "sl2": sl2(), "su2": su2(),
             "filiform4": filiform4()}
    table.update({f"bianchi_{k}".lower(): v for k, v in bianchi_presets().items()})
    try:
        return table[name.lower()]
    except KeyError:
        raise KeyError(f"unknown algebra preset {name!r}; known: {sorted(table)}") from None


def _group_frames():
    """preset -> (coords, algebra, builder of left-invariant fields X_A)."""

    def heis(c):
        x, y, z = Poly.variables(c)
        return [[1, 0, 0], [0, 1, x], [0, 0, 1]]

    def b5(c):
        s, p, q = Poly.variables(c)
        return [[0, s, 0], [0, 0, s], [s, 0, 0]]

    def b6(c):
        s, p, q = Poly.variables(c)
        return [[0, s, 0], [0, 0, s * s], [s, 0, 0]]

    def b8(c):
        a, b, cc = Poly.variables(c)
        d = ratfunc(b * cc + 1, a)
        return [[a, -b, cc], [0, a, 0], [b, 0, d]]

    def flat(c):
        return [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    return {
        "Heisenberg3": (("x", "y", "z"), heisenberg(), heis),
        "Bianchi_II": (("x", "y", "z"), heisenberg(), heis),
        "Bianchi_V": (("s", "p", "q"), _solvable("V", [[1, 0], [0, 1]]), b5),
        "Bianchi_VI_a": (("s", "p", "q"), _solvable("VI_h", [[1, 0], [0, 2]]), b6),
        "Bianchi_VIII": (("a", "b", "c"), sl2(), b8),
        "abelian": (("x", "y", "z"), abelian(3), flat),
    }


GROUP_PRESETS = tuple(_group_frames())


def group_preset(name: str):
    frames = _group_frames()
    if name not in frames:
        raise KeyError(f"unknown group preset {name!r}; known: {sorted(frames)}")
    coords, lie, build = frames[name]
    fields = [np.array([lift(x, coords) for x in row], dtype=object) for row in build(coords)]
    return coords, lie, fields


def left_invariant_bracket_defect(name: str) -> list:
    """[X_A, X_B] - X_[A,B] for every pair; all zero for a correct frame."""
    coords, lie, fields = group_preset(name)
    out = []
    for i in range(3):
        for j in range(i + 1, 3):
            br = bracket(fields[i], fields[j], coords)
            target = sum((fields[k] * lie.c[k, i, j] for k in range(3) if lie.c[k, i, j] != 0),
                         np.zeros(3, dtype=object))
            out.append(br - target)
    return out


def _combine(fields, coeffs) -> np.ndarray:
    out = np.zeros(len(fields[0]), dtype=object)
    for f, c in zip(fields, coeffs):
        c = normalize(c)
        if c != 0:
            out = out + f * c
    return out


def _eigenfunction(x, kappa, coords, max_degree: int = 4, max_den: int = 2):
    """A rational phi = P / m with X(phi) = kappa * phi and m a monomial.

    For left-invariant X the matrix coefficients of Ad(g) on a
    kappa-eigenvector of ad(X) solve this, and in the preset charts they are
    polynomials over monomial denominators.  Writing X = Xt / D with
    polynomial Xt, the condition Xt(P) m - P Xt(m) - kappa D P m = 0 is
    linear in the coefficients of P.
    """
    import itertools

    n = len(coords)
    d = Poly.const(coords, 1)
    for c in x:
        den = parts(c, coords)[1]
        if d.exact_div(den) is None:
            d = d * den
    xt = np.array([parts(ratfunc(parts(c, coords)[0] * d, parts(c, coords)[1]), coords)[0]
                   for c in x], dtype=object)
    monos = [e for e in itertools.product(range(max_degree + 1), repeat=n) if sum(e) <= max_degree]
    den_exps = sorted(itertools.product(range(max_den + 1), repeat=n), key=lambda e: (sum(e), e))
    for de in den_exps:
        m = Poly(coords, {de: 1})
        xm = apply(xt, m, coords)
        images = []
        for e in monos:
            mu = Poly(coords, {e: 1})
            images.append(apply(xt, mu, coords) * m - mu * xm - mu * m * d * kappa)
        rows = sorted({e for img in images if not is_zero(img) for e, _ in img.items()})
        a = np.array([[dict(img.items()).get(r, 0) if not is_zero(img) else 0 for img in images]
                      for r in rows], dtype=object).reshape(len(rows), len(monos))
        ns = linalg.nullspace(a)
        if ns:
            num = Poly(coords, {e: c for e, c in zip(monos, ns[0]) if c != 0})
            return ratfunc(num, m)
    return None


def realize_group_metric(preset: str, q: InvariantQuadruple):
    """Left-invariant chart metric, chart quadruple and lambda-field for a quadruple.

    In the adapted basis (N, Z, W..) with N spanning a, W representing b/a
    and Z completing b, the algebra metric has G(N, Z) = beta, G on the W
    block = gram and zeros elsewhere.
    """
    coords, lie, fields = group_preset(preset)
    h = Subspace.zero(3)
    rep = is_gn_quadruple(q, h, lie)
    if not rep.gn_valid:
        raise ValueError(f"quadruple is not valid for preset {preset}: {rep.witnesses}")
    n_vec = q.a.vectors()[0]
    w_reps = quotient_reps(q.b, q.a)
    z_vec = complement_reps(3, q.b)[0]
    adapted = [n_vec, z_vec] + w_reps
    b_mat = np.array([list(v) for v in adapted], dtype=object).T.copy()
    g_ad = linalg.zeros(3)
    g_ad[0, 1] = g_ad[1, 0] = q.beta
    m = len(w_reps)
    for i in range(m):
        for j in range(m):
            g_ad[2 + i, 2 + j] = q.gram[i, j]
    b_inv = linalg.inverse(b_mat)
    g_std = linalg.matmul(linalg.matmul(b_inv.T, g_ad), b_inv)
    e_mat = np.array([list(f) for f in fields], dtype=object).T.copy()
    theta = linalg.inverse(e_mat)
    gm = np.empty((3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            total = 0
            for a in range(3):
                for b in range(3):
                    if g_std[a, b] != 0 and theta[a, i] != 0 and theta[b, j] != 0:
                        total = total + theta[a, i] * g_std[a, b] * theta[b, j]
            gm[i, j] = total
    metric = ChartMetric(coords, gm)
    lam = _combine(fields, n_vec)
    screen = [_combine(fields, w) for w in w_reps]
    y = _combine(fields, z_vec)
    quad = ChartNullQuadruple(coords, lam, [lam] + screen, q.gram, q.beta, y)
    kappa_coords = quotient_coordinates(lie.bracket(n_vec, z_vec), Subspace.zero(3), adapted)
    kappa = kappa_coords[1]
    # when b is not closed the screen is not integrable and the rescaling is moot
    if kappa == 0 or not is_subalgebra(lie, q.b):
        x = lam
    else:
        phi = _eigenfunction(lam, kappa, coords)
        if phi is None:
            raise ValueError("no rational rescaling of the lambda field was found")
        x = lam * phi
    return metric, quad, x


def chart_kundt_verdict(metric: ChartMetric, quad: ChartNullQuadruple, x) -> dict:
    from ..chart.fields import frobenius_integrable
    from ..chart.kundt import kundt_vector_check

    integ = frobenius_integrable(quad.Lambda, metric.coords)
    kv = kundt_vector_check(x, metric, quad.transversal)
    return {"integrable": bool(integ), "kundt_vector": bool(kv),
            "verdict": bool(integ) and bool(kv),
            "witnesses": [v.to_json() for v in (integ, kv) if not v]}
