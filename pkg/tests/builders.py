"""Metric and tensor generators shared by the test modules."""

import random

import numpy as np

from kundtlab.algebra import linalg
from kundtlab.algebra.poly import Poly
from kundtlab.boost import Tensor
from kundtlab.chart.fields import ChartMetric, default_coords
from kundtlab.degenerate import random_poly

COORDS4 = default_coords(4)


def var(name, coords=COORDS4):
    return Poly.var(coords, name)


def flat_metric(n=4):
    coords = default_coords(n)
    g = linalg.zeros(n)
    g[0, 1] = g[1, 0] = 1
    for i in range(2, n):
        g[i, i] = 1
    return ChartMetric(coords, g)


def pp_wave(h, n=4):
    g = flat_metric(n)
    m = g.g.copy()
    m[0, 0] = h * 2
    return ChartMetric(g.coords, m)


def transverse_metric(rng, coords, m, degree, v_dependent=False):
    """2*I plus random polynomials in (u, x); optionally with extra v-terms."""
    gt = np.empty((m, m), dtype=object)
    v = Poly.var(coords, coords[1])
    for i in range(m):
        for j in range(i, m):
            p = random_poly(rng, coords, degree, 2, constant=False) + (2 if i == j else 0)
            gt[i, j] = gt[j, i] = p
    if v_dependent:
        bump = random_poly(rng, coords, 1, 2, constant=True)
        while bump.is_zero():
            bump = random_poly(rng, coords, 1, 2, constant=True)
        gt[0, 0] = gt[0, 0] + v * bump
    return gt


def kundt_metric(rng, n=4, corrupted=False):
    """2 du (dv + H du + W_i dx^i) + gt(u, x) with H, W depending on v."""
    coords = default_coords(n)
    v = Poly.var(coords, "v")
    h = sum((random_poly(rng, coords, 2) * v ** k for k in range(3)), Poly.zero(coords))
    w = [random_poly(rng, coords, 2) * v + random_poly(rng, coords, 2) for _ in range(n - 2)]
    g = linalg.zeros(n)
    g[0, 1] = g[1, 0] = 1
    g[0, 0] = h * 2
    for i, wi in enumerate(w):
        g[0, 2 + i] = g[2 + i, 0] = wi
    g[2:, 2:] = transverse_metric(rng, coords, n - 2, 2, v_dependent=corrupted)
    return ChartMetric(coords, g)


def random_tensor(rng, variance, n, bound=3):
    comps = np.empty((n,) * len(variance), dtype=object)
    for idx in np.ndindex(comps.shape):
        comps[idx] = rng.randint(-bound, bound)
    return Tensor(tuple(variance), comps)


def seeded(seed=0):
    return random.Random(seed)
