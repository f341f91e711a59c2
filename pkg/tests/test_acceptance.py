"""The ten acceptance criteria, each timed against its runtime limit.

A summary line per criterion is printed at the end of the pytest run.
"""

import random
import time

import numpy as np

from builders import COORDS4, kundt_metric, random_tensor, transverse_metric
from conftest import ACCEPTANCE_LINES
from kundtlab.algebra import linalg
from kundtlab.algebra.poly import Poly
from kundtlab.algebra.ratfunc import is_zero
from kundtlab.algebra.scalar import random_rational
from kundtlab.boost import (CO, CONTRA, AdaptedFrame, Tensor, boost_order, full_contraction, is_type,
                            pullback, weight_array)
from kundtlab.chart.connection import christoffel, connection_belongs, curvature_type_II_check
from kundtlab.chart.fields import (ChartMetric, ChartNullQuadruple, affine_shift, field_boost_check,
                                   metric_belongs, standard_quadruple)
from kundtlab.chart.kundt import kundt_equivalence_suite
from kundtlab.degenerate import (assemble_metric, degenerate_check, dv, invariants, quadruple_for,
                                 random_data, random_poly)
from kundtlab.gn import (eta, gn_from_params, gn_member, pullback_delta, random_gn,
                         random_rational_rotation)
from kundtlab.lie.algebra import Subspace, random_basis_change
from kundtlab.lie.codim1 import codim1_subalgebras
from kundtlab.lie.presets import (GROUP_PRESETS, bianchi_presets, chart_kundt_verdict, filiform4,
                                  group_preset, heisenberg, realize_group_metric, su2)
from kundtlab.lie.quadruple import (NonExistence, example_3dim, is_gn_quadruple, is_kundt_quadruple,
                                    nilpotent_conditions, random_quadruple)

STD = {n: AdaptedFrame.standard(n) for n in (3, 4, 5)}


def criterion(number, title, limit, body):
    start = time.perf_counter()
    status = "FAIL"
    try:
        detail = body()
        elapsed = time.perf_counter() - start
        if elapsed < limit:
            status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"criterion {number:2d} {status}  {title}  [{elapsed:.2f}s, limit {limit}s]"
                                + (f"  {detail}" if status == "PASS" and detail else ""))
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


# 1 -------------------------------------------------------------------------

def test_c01_gn_group_laws():
    def body():
        rng = random.Random(101)
        for k in range(500):
            n = 4 if k % 2 else 5
            a = random_rational(rng, 4, 3, nonzero=True)
            b = [random_rational(rng, 4, 3) for _ in range(n - 1)]
            avec = [random_rational(rng, 4, 3) for _ in range(n - 2)]
            f = gn_from_params(a, b, avec, random_rational_rotation(rng, n - 2))
            g = random_gn(rng, n)
            assert gn_member(f) is True
            assert gn_member(linalg.matmul(f, g)) is True
            assert gn_member(linalg.inverse(f)) is True
        return "500 elements"

    criterion(1, "GN group laws", 5, body)


# 2 -------------------------------------------------------------------------

def _type_II(rng, variance, n):
    t = random_tensor(rng, variance, n)
    return Tensor(t.variance, np.where(weight_array(variance, n) > 0, 0, t.components))


def _non_gn_control(rng, n):
    """Fixes the line of k but breaks the screen isometry or the k-l pairing."""
    m = random_gn(rng, n)
    d = linalg.identity(n)
    if rng.random() < 0.5:
        i = rng.randrange(2, n)
        d[i, i] = rng.choice([2, 3, -2])
    else:
        d[1, 1] = rng.choice([2, 3])
    return linalg.matmul(m, d)


def test_c02_contraction_invariance():
    def body():
        rng = random.Random(202)
        for k in range(200):
            n = rng.choice([3, 4])
            variance = (CO, CO) if k % 2 else (CO, CO, CO, CO)
            t = _type_II(rng, variance, n)
            f = random_gn(rng, n)
            assert full_contraction(pullback(t, f), eta(n)) == full_contraction(t, eta(n))
            assert is_type(pullback_delta(f), STD[n], "III")
        for _ in range(50):
            n = rng.choice([3, 4, 5])
            m = _non_gn_control(rng, n)
            assert m[1, 0] == 0 and all(m[i, 0] == 0 for i in range(2, n))
            assert not gn_member(m)
            assert not is_type(pullback_delta(m), STD[n], "III")
        return "200 cases, 50 controls"

    criterion(2, "trace invariance under GN", 10, body)


# 3 -------------------------------------------------------------------------

def _random_chart_quadruple(rng):
    """A constant adapted frame P (columns lambda, Y, screen) and random metric data on it."""
    while True:
        p = np.array([[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)], dtype=object)
        if linalg.det(p) != 0:
            break
    f = random_rational(rng, 3, 2, nonzero=True)
    gperp = transverse_metric(rng, COORDS4, 2, 1)
    cols = [p[:, i] for i in range(4)]
    q = ChartNullQuadruple(COORDS4, cols[0], [cols[0], cols[2], cols[3]], gperp, f, cols[1])
    return p, linalg.inverse(p), f, gperp, q


def _coordinate_form(p_inv, frame_matrix):
    return linalg.matmul(linalg.matmul(p_inv.T, frame_matrix), p_inv)


def _frame_metric(rng, f, gperp):
    g = np.empty((4, 4), dtype=object)
    g[:, :] = 0
    g[0, 1] = g[1, 0] = f
    g[2:, 2:] = gperp
    g[1, 1] = random_poly(rng, COORDS4, 2)
    for i in (2, 3):
        g[1, i] = g[i, 1] = random_poly(rng, COORDS4, 2)
    return g


def _frame_type_III(rng):
    t = np.zeros((4, 4), dtype=object)
    t[1, 1] = random_poly(rng, COORDS4, 2)
    for i in (2, 3):
        t[1, i] = t[i, 1] = random_poly(rng, COORDS4, 2)
    return t


def test_c03_affine_space_law():
    def body():
        rng = random.Random(303)
        for _ in range(100):
            p, p_inv, f, gperp, q = _random_chart_quadruple(rng)
            g = ChartMetric(COORDS4, _coordinate_form(p_inv, _frame_metric(rng, f, gperp)))
            assert metric_belongs(g, q) is True
            t = _coordinate_form(p_inv, _frame_type_III(rng))
            shifted = affine_shift(g, t, q)
            assert metric_belongs(shifted, q) is True
            diff = shifted.g - g.g
            assert linalg.arrays_equal(diff, t)
            assert field_boost_check(Tensor.covariant2(diff), q, -1) is None
            other = ChartMetric(COORDS4, _coordinate_form(p_inv, _frame_metric(rng, f, gperp)))
            assert metric_belongs(other, q) is True
            assert field_boost_check(Tensor.covariant2(other.g - g.g), q, -1) is None
        return "100 cases"

    criterion(3, "affine structure of belonging metrics", 10, body)


# 4 -------------------------------------------------------------------------

def test_c04_boost_order_invariance():
    def body():
        rng = random.Random(404)
        variances = [(CO,), (CONTRA,), (CO, CO), (CO, CONTRA), (CO, CO, CONTRA)]
        for k in range(200):
            variance = variances[k % len(variances)]
            t = random_tensor(rng, variance, 4) if k % 2 else _type_II(rng, variance, 4)
            a = random_gn(rng, 4)
            assert boost_order(t, STD[4].acted(a)) == boost_order(t, STD[4])
        return "200 cases"

    criterion(4, "boost order is GN-invariant", 10, body)


# 5 -------------------------------------------------------------------------

def test_c05_kundt_nil_killing_equivalence():
    q0 = standard_quadruple(COORDS4)

    def body():
        rng = random.Random(505)
        failing = 0
        for k in range(50):
            corrupted = k >= 25
            g = kundt_metric(rng, corrupted=corrupted)
            q = ChartNullQuadruple(COORDS4, q0.lam, q0.Lambda, g.g[2:, 2:], 1, q0.transversal)
            rep = kundt_equivalence_suite(dv(COORDS4), g, q, strict=True)
            assert rep["agree"]
            assert rep["nil_killing"] is (not corrupted)
            failing += not rep["kundt_vector"]
        assert failing == 25
        return "50 metrics, 25 corrupted fail both"

    criterion(5, "Kundt vector iff nil-Killing", 30, body)


# 6 -------------------------------------------------------------------------

def test_c06_levi_civita_connection():
    q0 = standard_quadruple(COORDS4)

    def body():
        rng = random.Random(606)
        for _ in range(20):
            gt = transverse_metric(rng, COORDS4, 2, 2)
            g = linalg.zeros(4)
            g[0, 1] = g[1, 0] = 1
            g[2:, 2:] = gt
            metric = ChartMetric(COORDS4, g)
            q = ChartNullQuadruple(COORDS4, q0.lam, q0.Lambda, gt, 1, q0.transversal)
            conn = christoffel(metric)
            assert connection_belongs(conn, q, metric) is True
            assert curvature_type_II_check(conn, q, metric, samples=5, seed=rng.randrange(10 ** 6)) is True
        return "20 metrics"

    criterion(6, "Levi-Civita connection belongs, curvature type II", 60, body)


# 7 -------------------------------------------------------------------------

def test_c07_degenerate_invariants():
    v = Poly.var(COORDS4, "v")

    def body():
        rng = random.Random(707)
        for _ in range(50):
            d = random_data(rng, 4, 3)
            inv = invariants(d)
            assert inv["degenerate"] is True
            assert inv["psi"] == d.H[2] * 2
            gt_inv = linalg.inverse(d.gt)
            for i in range(2):
                expected = sum(gt_inv[i, j] * d.W[j][1] for j in range(2))
                assert is_zero(inv["phi"][i] - expected)
            psi = inv["psi"]
            assert (psi.diff("v") if isinstance(psi, Poly) else 0) == 0
            g = assemble_metric(d).g.copy()
            g[0, 0] = g[0, 0] + v ** 3 * (random_poly(rng, COORDS4, 1, 2, constant=False) + 1)
            control = degenerate_check(ChartMetric(COORDS4, g), dv(COORDS4), quadruple_for(d))
            assert not control
        return "50 instances, 50 cubic controls"

    criterion(7, "degenerate Kundt invariants", 30, body)


# 8 -------------------------------------------------------------------------

def test_c08_bianchi_sweep():
    def body():
        for name, lie in bianchi_presets().items():
            found = example_3dim(lie)
            if name == "IX":
                assert isinstance(found, NonExistence)
            else:
                assert is_kundt_quadruple(found, Subspace.zero(3), lie).kundt_valid
        rng = random.Random(808)
        for _ in range(50):
            moved = su2().change_basis(random_basis_change(rng, 3))
            assert codim1_subalgebras(moved).is_empty()
            assert isinstance(example_3dim(moved), NonExistence)
        return "8 quadruples, su(2) empty under 50 basis changes"

    criterion(8, "Bianchi sweep", 10, body)


# 9 -------------------------------------------------------------------------

def test_c09_nilpotent_inclusions():
    def body():
        rng = random.Random(909)
        counts = {}
        for lie in (heisenberg(), filiform4()):
            subs = codim1_subalgebras(lie)
            zero = Subspace.zero(lie.dim)
            found = 0
            while found < 200:
                q = random_quadruple(rng, lie, subalgebras=subs)
                if q is None or not is_kundt_quadruple(q, zero, lie).kundt_valid:
                    continue
                found += 1
                conds = nilpotent_conditions(lie, q)
                assert conds["[a,b] in a"] and conds["[a,n] in b"], conds
            counts[lie.name] = found
        return ", ".join(f"{k}: {v} Kundt quadruples" for k, v in counts.items())

    criterion(9, "nilpotent bracket inclusions", 10, body)


# 10 ------------------------------------------------------------------------

def test_c10_algebra_and_chart_verdicts_agree():
    def body():
        rng = random.Random(1010)
        tally = {}
        for preset in GROUP_PRESETS:
            _, lie, _ = group_preset(preset)
            zero = Subspace.zero(3)
            subs = codim1_subalgebras(lie)
            quads = [example_3dim(lie)]
            for closed in (True, False):
                while len(quads) < (7 if closed else 13):
                    q = random_quadruple(rng, lie, closed=closed, subalgebras=subs if closed else None)
                    if q is not None:
                        quads.append(q)
            pos = neg = 0
            for q in quads:
                assert is_gn_quadruple(q, zero, lie).gn_valid
                algebra = is_kundt_quadruple(q, zero, lie).kundt_valid
                metric, quad, x = realize_group_metric(preset, q)
                chart = chart_kundt_verdict(metric, quad, x)["verdict"]
                assert algebra == chart, (preset, q.to_json())
                pos += algebra
                neg += not algebra
            assert pos >= 1
            if preset != "abelian":
                assert neg >= 1, preset
            tally[preset] = f"{pos}+/{neg}-"
        return " ".join(f"{k}={v}" for k, v in tally.items())

    criterion(10, "algebra and chart Kundt verdicts agree", 60, body)
