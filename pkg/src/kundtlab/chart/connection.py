"""Affine connections in coordinates: Levi-Civita, covariant derivatives, curvature.

Conventions: ``Gamma[a, b, c]`` is the coefficient in
``nabla_{d_b} d_c = Gamma^a_bc d_a`` and

    R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb

so that ``R(d_c, d_d) d_b = R^a_bcd d_a``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..algebra import linalg
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc, diff, evaluate, is_zero
from ..boost import CO, AdaptedFrame, Tensor, component_weight, to_frame_components
from ..report import Violation
from .fields import (ChartMetric, ChartNullQuadruple, _same_chart, denominators, natural_dual,
                     one_form_apply, sample_points)

HALF = Fraction(1, 2)


@dataclass
class ChartConnection:
    coords: tuple[str, ...]
    Gamma: np.ndarray

    def __post_init__(self):
        self.coords = tuple(self.coords)
        self.Gamma = np.asarray(self.Gamma, dtype=object)
        n = len(self.coords)
        if self.Gamma.shape != (n, n, n):
            raise ValueError(f"Christoffel array must be {(n, n, n)}, got {self.Gamma.shape}")

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_torsion_free(self) -> bool:
        return linalg.arrays_equal(self.Gamma, np.swapaxes(self.Gamma, 1, 2))


def _sum(terms):
    total = 0
    for t in terms:
        if not is_zero(t):
            total = total + t
    return total


def first_kind(g: ChartMetric) -> np.ndarray:
    """Gamma_{e,ab} = 1/2 (d_a g_eb + d_b g_ea - d_e g_ab)."""
    n, xs, gm = g.n, g.coords, g.g
    dg = [[[diff(gm[a, b], xs[c]) for b in range(n)] for a in range(n)] for c in range(n)]
    out = np.empty((n, n, n), dtype=object)
    for e in range(n):
        for a in range(n):
            for b in range(a, n):
                v = dg[a][e][b] + dg[b][e][a] - dg[e][a][b]
                v = v * HALF if not is_zero(v) else 0
                out[e, a, b] = out[e, b, a] = v
    return out


def christoffel(g: ChartMetric) -> ChartConnection:
    g_inv = inverse_metric(g)
    low = first_kind(g)
    n = g.n
    gam = np.empty((n, n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            for c in range(b, n):
                v = _sum(g_inv[a, d] * low[d, b, c] for d in range(n)
                         if not is_zero(g_inv[a, d]) and not is_zero(low[d, b, c]))
                gam[a, b, c] = gam[a, c, b] = v
    return ChartConnection(g.coords, gam)


def inverse_metric(g: ChartMetric) -> np.ndarray:
    d = g.det()
    if is_zero(d):
        raise ValueError("metric is identically degenerate")
    return linalg.inverse(g.g)


def covariant_derivative(conn: ChartConnection, t: Tensor) -> np.ndarray:
    """Array D[c, idx...] = (nabla_{d_c} T)_{idx}."""
    n, xs, gam = conn.n, conn.coords, conn.Gamma
    comps = t.components
    out = np.empty((n,) + comps.shape, dtype=object)
    for c in range(n):
        for idx in np.ndindex(comps.shape):
            val = diff(comps[idx], xs[c])
            for slot, var in enumerate(t.variance):
                j = list(idx)
                for e in range(n):
                    j[slot] = e
                    tc = comps[tuple(j)]
                    if is_zero(tc):
                        continue
                    if var == CO:
                        coef = gam[e, c, idx[slot]]
                        if not is_zero(coef):
                            val = val - coef * tc
                    else:
                        coef = gam[idx[slot], c, e]
                        if not is_zero(coef):
                            val = val + coef * tc
            out[(c,) + idx] = val
    return out


def nabla_vector(conn: ChartConnection, x) -> np.ndarray:
    """D[c, a] = (nabla_{d_c} X)^a."""
    return covariant_derivative(conn, Tensor(("contra",), np.asarray(x, dtype=object)))


def nabla_metric(conn: ChartConnection, g: ChartMetric) -> np.ndarray:
    return covariant_derivative(conn, g.tensor())


def riemann(conn: ChartConnection) -> Tensor:
    """R^a_bcd as a (contra, co, co, co) tensor."""
    n, xs, gam = conn.n, conn.coords, conn.Gamma
    dgam = np.empty((n, n, n, n), dtype=object)  # dgam[x, a, b, c] = d_x Gamma^a_bc
    for x in range(n):
        for idx in np.ndindex(gam.shape):
            dgam[(x,) + idx] = diff(gam[idx], xs[x])
    r = np.empty((n, n, n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                r[a, b, c, c] = 0
                for d in range(c + 1, n):
                    v = dgam[c, a, d, b] - dgam[d, a, c, b]
                    for e in range(n):
                        if not is_zero(gam[a, c, e]) and not is_zero(gam[e, d, b]):
                            v = v + gam[a, c, e] * gam[e, d, b]
                        if not is_zero(gam[a, d, e]) and not is_zero(gam[e, c, b]):
                            v = v - gam[a, d, e] * gam[e, c, b]
                    r[a, b, c, d] = v
                    r[a, b, d, c] = -v
    return Tensor(("contra", "co", "co", "co"), r)


def lowered_riemann(r: Tensor, g: ChartMetric) -> np.ndarray:
    """Rm[x, y, z, w] = g(R(x, y) z, w) = g_wa R^a_zxy."""
    n = g.n
    rc = r.components
    low = np.empty((n, n, n, n), dtype=object)
    for w in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    low[c, d, b, w] = _sum(g.g[w, a] * rc[a, b, c, d] for a in range(n)
                                           if not is_zero(g.g[w, a]) and not is_zero(rc[a, b, c, d]))
    return low


def connection_belongs(conn: ChartConnection, q: ChartNullQuadruple,
                       g: ChartMetric) -> bool | Violation:
    """For every coordinate field Z: nabla_Z lambda in lambda, nabla_Z Lambda in Lambda,
    and nabla_Z g of type III in the frame adapted to the quadruple."""
    _same_chart(conn.coords, q.coords)
    _same_chart(conn.coords, g.coords)
    n = conn.n
    alpha = natural_dual(q.lam, q)
    d_lam = nabla_vector(conn, q.lam)
    for c in range(n):
        if not linalg.parallel(d_lam[c], q.lam):
            return Violation("connection-belongs", "lambda", "nabla_Z lambda leaves lambda",
                             {"Z": conn.coords[c], "nabla_Z lambda": list(d_lam[c])})
    for i, w in enumerate(q.Lambda[1:], start=1):
        dw = nabla_vector(conn, w)
        for c in range(n):
            val = one_form_apply(alpha, dw[c])
            if not is_zero(val):
                return Violation("connection-belongs", "Lambda", "nabla_Z W leaves Lambda",
                                 {"Z": conn.coords[c], "Lambda_index": i, "alpha(nabla_Z W)": val})
    dg = nabla_metric(conn, g)
    frame = q.frame()
    for c in range(n):
        fc = to_frame_components(Tensor.covariant2(dg[c]), frame)
        for idx, x in np.ndenumerate(fc.components):
            w = component_weight((CO, CO), idx)
            if w > -1 and not is_zero(x):
                return Violation("connection-belongs", "nabla-g-type-III",
                                 "nabla_Z g has a component of boost weight > -1",
                                 {"Z": conn.coords[c], "frame_index": list(idx), "weight": w,
                                  "value": x})
    return True


def _numerators(values) -> list:
    out = []
    for x in values:
        if isinstance(x, RatFunc):
            out.append(x.num)
        elif isinstance(x, Poly):
            out.append(x)
    return out


def _contract4(rm: np.ndarray, vecs) -> object:
    t = rm
    for v in reversed(vecs):
        t = np.tensordot(t, np.asarray(v, dtype=object), axes=([t.ndim - 1], [0]))
    return t.item() if hasattr(t, "item") and np.ndim(t) == 0 else t


def curvature_type_II_check(conn: ChartConnection, q: ChartNullQuadruple, g: ChartMetric,
                            samples: int = 20, seed: int = 0) -> bool | Violation:
    """Lowered curvature has boost order <= 0.

    Checked symbolically on the four families of components that carry
    positive weight, and numerically on the full tensor at sampled points.
    """
    if not conn.is_torsion_free():
        raise ValueError("connection has torsion")
    pre = connection_belongs(conn, q, g)
    if not pre:
        raise ValueError(f"connection does not belong to the structure: {pre.message}")
    n = conn.n
    rm = lowered_riemann(riemann(conn), g)
    lam, Lam = q.lam, q.Lambda
    tm = [np.array([1 if j == i else 0 for j in range(n)], dtype=object) for i in range(n)]
    blocks = {
        "R(lambda,Lambda,lambda,TM)": [(lam, w, lam, e) for w in Lam for e in tm],
        "R(Lambda,Lambda,lambda,Lambda)": [(w1, w2, lam, w3) for w1 in Lam for w2 in Lam for w3 in Lam],
        "R(TM,lambda,lambda,Lambda)": [(e, lam, lam, w) for e in tm for w in Lam],
        "R(Lambda,lambda,Lambda,Lambda)": [(w1, lam, w2, w3) for w1 in Lam for w2 in Lam for w3 in Lam],
    }
    for name, args in blocks.items():
        for vecs in args:
            val = _contract4(rm, vecs)
            if not is_zero(val):
                return Violation("curvature-type-II", name, "positive-weight curvature block is nonzero",
                                 {"value": val})
    frame = q.frame_matrix()
    rng = random.Random(seed)
    avoid = denominators(rm, frame) + _numerators([linalg.det(frame)])
    for pt in sample_points(conn.coords, rng, samples, avoid):
        num = np.empty(rm.shape, dtype=object)
        for idx, x in np.ndenumerate(rm):
            num[idx] = evaluate(x, pt)
        fr = np.empty(frame.shape, dtype=object)
        for idx, x in np.ndenumerate(frame):
            fr[idx] = evaluate(x, pt)
        fc = to_frame_components(Tensor((CO,) * 4, num), AdaptedFrame(fr))
        for idx, x in np.ndenumerate(fc.components):
            w = component_weight((CO,) * 4, idx)
            if w > 0 and x != 0:
                return Violation("curvature-type-II", "sampled", "positive boost weight at a sample point",
                                 {"point": pt, "frame_index": list(idx), "weight": w, "value": x})
    return True

