"""Nil-Killing and Kundt conditions for a vector field spanning the null line.

The Kundt test works with first-kind Christoffel symbols only, so it never
inverts the metric:

    nabla_a X_b = d_a X_b - Gamma_{e,ab} X^e
    div X       = d_a X^a + X(det g) / (2 det g)

Shear is measured on the screen lambda^perp intersected with Y^perp for a
transversal Y, as the trace-free part of the symmetrized nabla X there.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..algebra import linalg
from ..algebra.ratfunc import diff, is_zero
from ..report import Violation
from .connection import first_kind
from .fields import (ChartMetric, ChartNullQuadruple, _same_chart, apply, bracket,
                     coordinate_field, lie_derivative, lower, pair, ratio)


def nil_killing_check(x, g: ChartMetric, q: ChartNullQuadruple) -> bool | Violation:
    """L_X g kills lambda against everything and Lambda against Lambda; [X, lambda] in lambda."""
    _same_chart(g.coords, q.coords)
    x = np.asarray(x, dtype=object)
    lg = lie_derivative(x, g.tensor(), g.coords).components
    n = g.n
    for b in range(n):
        e = coordinate_field(g.coords, b)
        val = pair(lg, q.lam, e)
        if not is_zero(val):
            return Violation("nil-killing", "L_X g(lambda, .)", "L_X g does not annihilate lambda",
                             {"against": g.coords[b], "value": val})
    for i, w in enumerate(q.Lambda):
        for j in range(i, len(q.Lambda)):
            val = pair(lg, w, q.Lambda[j])
            if not is_zero(val):
                return Violation("nil-killing", "L_X g(Lambda, Lambda)",
                                 "L_X g is nonzero on Lambda x Lambda",
                                 {"i": i, "j": j, "value": val})
    br = bracket(x, q.lam, g.coords)
    if not linalg.parallel(br, q.lam):
        return Violation("nil-killing", "[X, lambda]", "[X, lambda] leaves lambda",
                         {"bracket": list(br)})
    return True


def nabla_flat(x, g: ChartMetric) -> np.ndarray:
    """D[a, b] = nabla_a X_b."""
    n, xs = g.n, g.coords
    low = first_kind(g)
    xf = lower(g.g, x)
    out = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            v = diff(xf[b], xs[a])
            for e in range(n):
                if not is_zero(x[e]) and not is_zero(low[e, a, b]):
                    v = v - low[e, a, b] * x[e]
            out[a, b] = v
    return out


def divergence(x, g: ChartMetric):
    det = g.det()
    if is_zero(det):
        raise ValueError("metric is identically degenerate")
    total = 0
    for a, name in enumerate(g.coords):
        total = total + diff(x[a], name)
    xd = apply(x, det, g.coords)
    if not is_zero(xd):
        total = total + ratio(xd, det * 2)
    return total


def _transversal(x, g: ChartMetric, y=None):
    if y is not None:
        y = np.asarray(y, dtype=object)
        if is_zero(pair(g.g, x, y)):
            raise ValueError("transversal Y is orthogonal to X")
        return y
    for i in range(g.n):
        e = coordinate_field(g.coords, i)
        if not is_zero(pair(g.g, x, e)):
            return e
    raise ValueError("X is orthogonal to every coordinate field; metric degenerate")


def shear(x, g: ChartMetric, y=None, nabla=None) -> tuple[np.ndarray, np.ndarray]:
    """(trace-free screen part of sym nabla X, screen Gram h)."""
    n = g.n
    y = _transversal(x, g, y)
    constraints = np.array([list(lower(g.g, x)), list(lower(g.g, y))], dtype=object)
    screen = linalg.nullspace(constraints)
    if len(screen) != n - 2:
        raise ValueError("screen space has the wrong dimension")
    d = nabla_flat(x, g) if nabla is None else nabla
    sym = d + d.T
    m = n - 2
    s = np.empty((m, m), dtype=object)
    h = np.empty((m, m), dtype=object)
    for i in range(m):
        for j in range(i, m):
            s[i, j] = s[j, i] = pair(sym, screen[i], screen[j]) * Fraction(1, 2)
            h[i, j] = h[j, i] = pair(g.g, screen[i], screen[j])
    if m == 0:
        return s, h
    h_inv = linalg.inverse(h)
    trace = 0
    for i in range(m):
        for j in range(m):
            if not is_zero(h_inv[i, j]) and not is_zero(s[j, i]):
                trace = trace + h_inv[i, j] * s[j, i]
    tf = s - h * (trace * Fraction(1, m)) if not is_zero(trace) else s
    return tf, h


def kundt_vector_check(x, g: ChartMetric, y=None) -> bool | Violation:
    """Affinely geodesic, divergence-free and shear-free, checked in that order.

    ``y`` optionally fixes the transversal used for screen representatives;
    by default the first coordinate field not orthogonal to X.
    """
    x = np.asarray(x, dtype=object)
    if not is_zero(pair(g.g, x, x)):
        raise ValueError("X is not null for g")
    d = nabla_flat(x, g)
    n = g.n
    for b in range(n):
        v = 0
        for a in range(n):
            if not is_zero(x[a]) and not is_zero(d[a, b]):
                v = v + x[a] * d[a, b]
        if not is_zero(v):
            return Violation("kundt-vector", "geodesic", "nabla_X X != 0",
                             {"component": g.coords[b], "value": v})
    div = divergence(x, g)
    if not is_zero(div):
        return Violation("kundt-vector", "divergence", "nabla_a X^a != 0", {"value": div})
    tf, _ = shear(x, g, y, d)
    if not linalg.is_zero_array(tf):
        return Violation("kundt-vector", "shear", "trace-free screen part of nabla X is nonzero",
                         {"shear": tf})
    return True


def kundt_conditions(x, g: ChartMetric, y=None) -> dict:
    """Each of the three Kundt conditions evaluated separately."""
    x = np.asarray(x, dtype=object)
    d = nabla_flat(x, g)
    n = g.n
    acc = [sum((x[a] * d[a, b] for a in range(n) if not is_zero(x[a])), 0) for b in range(n)]
    tf, _ = shear(x, g, y, d)
    return {
        "geodesic": all(is_zero(v) for v in acc),
        "divergence_free": is_zero(divergence(x, g)),
        "shear_free": linalg.is_zero_array(tf),
    }


class EquivalenceFault(AssertionError):
    """The two sides of a proven equivalence disagreed."""


def kundt_equivalence_suite(x, g: ChartMetric, q: ChartNullQuadruple, y=None,
                            strict: bool = False) -> dict:
    """Run both checks; ``agree`` False signals an implementation fault."""
    nk = nil_killing_check(x, g, q)
    kv = kundt_vector_check(x, g, q.transversal if y is None else y)
    report = {
        "nil_killing": bool(nk),
        "kundt_vector": bool(kv),
        "agree": bool(nk) == bool(kv),
        "witnesses": [v.to_json() for v in (nk, kv) if not v],
    }
    if strict and not report["agree"]:
        raise EquivalenceFault(f"nil-Killing={bool(nk)} but Kundt={bool(kv)}")
    return report
