import itertools
import random
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kundtlab.algebra import linalg
from kundtlab.lie.algebra import (LieAlgebra, Subspace, adjoint_invariant, is_nilpotent, is_subalgebra,
                                  lower_central_series, random_basis_change, validate_lie_algebra)
from kundtlab.lie.codim1 import codim1_subalgebras, is_codim1_subalgebra
from kundtlab.lie.presets import (GROUP_PRESETS, abelian, bianchi_presets, chart_kundt_verdict,
                                  filiform4, group_preset, heisenberg, left_invariant_bracket_defect,
                                  named_algebra, realize_group_metric, sl2, su2)
from kundtlab.lie.quadruple import (InvariantQuadruple, NonExistence, example_3dim, is_gn_quadruple,
                                    is_kundt_quadruple, nilpotent_conditions, random_quadruple)

ZERO3 = Subspace.zero(3)


def span(n, *vecs):
    return Subspace.span(n, [list(v) for v in vecs])


def e(n, i):
    return [1 if j == i else 0 for j in range(n)]


def e2_algebra():
    # translations e1, e2 and a rotation e3
    return LieAlgebra.from_brackets(3, [(2, 0, 1, 1), (2, 1, 0, -1)], "e2")


# -- structure constants -----------------------------------------------------

def test_validate_examples():
    assert validate_lie_algebra(abelian(3)) is True
    assert validate_lie_algebra(heisenberg()) is True
    assert validate_lie_algebra(sl2()) is True


def test_corrupted_su2_reports_witness_triple():
    # flipping a whole bracket gives so(2,1), so corrupt a single entry
    c = su2().c.copy()
    c[0, 1, 2] = -1
    verdict = validate_lie_algebra(LieAlgebra(3, c))
    assert not verdict and verdict.condition == "antisymmetry"
    assert sorted(verdict.witness.values()) == [1, 2, 3]
    c = su2().c.copy()
    c[0, 0, 1], c[0, 1, 0] = 1, -1
    verdict = validate_lie_algebra(LieAlgebra(3, c))
    assert verdict.condition == "jacobi" and verdict.witness["triple"] == [1, 2, 3]


def test_whole_bracket_sign_flip_is_still_a_lie_algebra():
    c = su2().c.copy()
    c[0, 1, 2], c[0, 2, 1] = -1, 1
    assert validate_lie_algebra(LieAlgebra(3, c)) is True


def test_brute_force_jacobi_scan_agrees():
    rng = random.Random(3)
    for _ in range(20):
        c = su2().c.copy()
        k, i, j = rng.randrange(3), rng.randrange(3), rng.randrange(3)
        if i == j:
            continue
        c[k, i, j], c[k, j, i] = c[k, i, j] + 1, c[k, j, i] - 1
        lie = LieAlgebra(3, c)
        # direct scan over all basis triples with the raw constant formula
        bad = any(sum(c[m, a, b] * c[l, m, d] + c[m, b, d] * c[l, m, a] + c[m, d, a] * c[l, m, b]
                      for m in range(3)) != 0
                  for a, b, d, l in itertools.product(range(3), repeat=4))
        assert bool(validate_lie_algebra(lie)) is not bad


def test_antisymmetry_violation():
    c = np.zeros((3, 3, 3), dtype=object)
    c[2, 0, 1] = 1
    verdict = validate_lie_algebra(LieAlgebra(3, c))
    assert verdict.condition == "antisymmetry"


def test_presets_constants():
    eps = su2().c
    for i, j, k in itertools.product(range(3), repeat=3):
        expected = 0
        if len({i, j, k}) == 3:
            expected = 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        assert eps[k, i, j] == expected
    assert heisenberg().brackets() == [(0, 1, 2, 1)]
    assert abelian(3).brackets() == []
    presets = bianchi_presets()
    assert len(presets) == 9
    assert all(validate_lie_algebra(lie) is True for lie in presets.values())
    assert named_algebra("bianchi_ix").brackets() == su2().brackets()


# -- ad-invariance -----------------------------------------------------------

def test_zero_isotropy_is_vacuous():
    assert adjoint_invariant(span(3, [1, 2, 3]), ZERO3, su2())


def test_e2_rotation_invariance():
    lie, h = e2_algebra(), span(3, e(3, 2))
    assert adjoint_invariant(span(3, e(3, 2)), h, lie)
    assert not adjoint_invariant(span(3, e(3, 0)), h, lie)
    assert adjoint_invariant(span(3, e(3, 0), e(3, 1)), h, lie)


def test_e2_gram_invariance_needs_rotation_invariant_gram():
    lie, h = e2_algebra(), span(3, e(3, 2))
    a = span(3, e(3, 2))
    b = Subspace.whole(3)
    # the rotation acts on b/a = span(e1, e2); only multiples of the identity are invariant
    assert adjoint_invariant(linalg.identity(2), h, lie, a, b)
    assert not adjoint_invariant(linalg.as_matrix([[2, 0], [0, 1]]), h, lie, a, b)


# -- quadruples --------------------------------------------------------------

def test_abelian_flag_is_gn_and_kundt():
    q = InvariantQuadruple(span(3, e(3, 0)), span(3, e(3, 0), e(3, 1)), [[1]], 1)
    assert is_gn_quadruple(q, ZERO3, abelian(3)).gn_valid
    assert is_kundt_quadruple(q, ZERO3, abelian(3)).kundt_valid


def test_heisenberg_hyperplanes_through_center():
    lie = heisenberg()
    for phi in ([1, 0, 0], [0, 1, 0], [2, -3, 0]):
        b = Subspace.kernel(phi)
        q = InvariantQuadruple(span(3, e(3, 2)), b, [[1]], 1)
        assert is_gn_quadruple(q, ZERO3, lie).gn_valid
        assert is_kundt_quadruple(q, ZERO3, lie).kundt_valid


def test_dimension_axiom():
    q = InvariantQuadruple(span(3, e(3, 0), e(3, 1)), span(3, e(3, 0), e(3, 1)), np.zeros((0, 0)), 1)
    rep = is_gn_quadruple(q, ZERO3, abelian(3))
    assert not rep.gn_valid and rep.gn_checks["dim-a"] is False


def test_gram_and_beta_axioms():
    a, b = span(3, e(3, 0)), span(3, e(3, 0), e(3, 1))
    assert not is_gn_quadruple(InvariantQuadruple(a, b, [[-1]], 1), ZERO3, abelian(3)).gn_valid
    assert not is_gn_quadruple(InvariantQuadruple(a, b, [[1]], 0), ZERO3, abelian(3)).gn_valid


def test_scaling_action_is_not_kundt():
    # Bianchi V: e3 scales span(e1, e2); b = span(e3, e1) is closed, a = span e3
    lie = bianchi_presets()["V"]
    q = InvariantQuadruple(span(3, e(3, 2)), span(3, e(3, 2), e(3, 0)), [[1]], 1)
    rep = is_kundt_quadruple(q, ZERO3, lie)
    assert rep.gn_valid and rep.kundt_checks["b-subalgebra"]
    assert rep.kundt_checks["skew-adjoint"] is False
    m = next(w["M"] for w in rep.witnesses if w["failed"] == "skew-adjoint")
    assert m == [[1]]


def test_non_closed_hyperplane_reports_escaping_bracket():
    q = InvariantQuadruple(span(3, e(3, 0)), span(3, e(3, 0), e(3, 1)), [[1]], 1)
    rep = is_kundt_quadruple(q, ZERO3, heisenberg())
    assert rep.kundt_checks["b-subalgebra"] is False
    assert rep.witnesses[-1]["escaping"]


def test_solvable_derived_line_is_kundt():
    for name in ("III", "IV", "V", "VI_h", "VII_h"):
        lie = bianchi_presets()[name]
        b = span(3, e(3, 0), e(3, 1))
        q = example_3dim(lie)
        assert is_kundt_quadruple(q, ZERO3, lie).kundt_valid
        # b = span(e1, e2) is abelian, so any line works
        alt = InvariantQuadruple(span(3, e(3, 0)), b, [[1]], 1)
        assert is_kundt_quadruple(alt, ZERO3, lie).kundt_valid


# -- codimension-one subalgebras ---------------------------------------------

def test_codim1_examples():
    assert codim1_subalgebras(su2()).is_empty()
    res = codim1_subalgebras(abelian(3))
    assert [f.kind for f in res.families] == ["all"]
    heis = codim1_subalgebras(heisenberg())
    rng = random.Random(0)
    for _ in range(10):
        assert heis.sample(rng).contains(e(3, 2))


def test_codim1_rejects_large_dimension_enumeration():
    with pytest.raises(ValueError):
        codim1_subalgebras(abelian(5))
    assert is_codim1_subalgebra(abelian(5), [1, 0, 0, 0, 2])


def _primitive(phi):
    g = 0
    for x in phi:
        g = gcd(g, int(x))
    phi = [int(x) // g for x in phi]
    first = next(x for x in phi if x != 0)
    return tuple(-x for x in phi) if first < 0 else tuple(phi)


def _scaled_integral(phi):
    den = 1
    for x in phi:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return _primitive([Fraction(x) * den for x in phi])


def _brute(lie, box=2):
    out = set()
    for phi in itertools.product(range(-box, box + 1), repeat=lie.dim):
        if any(phi) and _primitive(phi) == phi:
            if is_subalgebra(lie, Subspace.kernel(list(phi))):
                out.add(phi)
    return out


def _covers(res, phi, n):
    if any(_scaled_integral(p) == phi for p in res.isolated):
        return True
    for fam in res.families:
        pts = []
        for params in itertools.product(range(-2, 3), repeat=fam.parameters):
            p = fam.member(params)
            if p is not None and any(x != 0 for x in p):
                pts.append([Fraction(x) for x in p])
        if not pts:
            continue
        if fam.kind == "conic":
            # fit the conic through the sampled points, then test phi on it
            mons = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
            rows = linalg.as_matrix([[p[i] * p[j] for i, j in mons] for p in pts[:40]])
            coeffs = linalg.nullspace(rows)
            assert len(coeffs) == 1
            if sum(coeffs[0][t] * phi[i] * phi[j] for t, (i, j) in enumerate(mons)) == 0:
                return True
            continue
        base = linalg.as_matrix(pts)
        r = linalg.rank(base)
        if linalg.rank(linalg.as_matrix(pts + [list(phi)])) == r:
            return True
    return False


@pytest.mark.parametrize("name", ["I", "II", "III", "IV", "V", "VI_h", "VII_h", "VIII", "IX"])
def test_codim1_complete_against_brute_force(name):
    lie = bianchi_presets()[name]
    res = codim1_subalgebras(lie)
    found = _brute(lie)
    for phi in found:
        assert _covers(res, phi, 3), phi
    rng = random.Random(1)
    for _ in range(10):
        b = res.sample(rng)
        if b is None:
            assert name == "IX"
            break
        assert is_subalgebra(lie, b)


def test_codim1_filiform_complete_against_brute_force():
    lie = filiform4()
    res = codim1_subalgebras(lie)
    found = _brute(lie, box=1)
    assert found
    for phi in found:
        assert _covers(res, phi, 4), phi
    assert is_codim1_subalgebra(lie, [1, 0, 0, 0])
    assert Subspace.kernel([1, 0, 0, 0]) == span(4, e(4, 1), e(4, 2), e(4, 3))


def test_su2_empty_under_basis_changes():
    rng = random.Random(8)
    for _ in range(10):
        assert codim1_subalgebras(su2().change_basis(random_basis_change(rng, 3))).is_empty()


# -- the 3-dimensional recipe ------------------------------------------------

def test_example_3dim():
    assert isinstance(example_3dim(su2()), NonExistence)
    q = example_3dim(heisenberg())
    assert q.a == span(3, e(3, 2))
    q = example_3dim(sl2())
    assert is_kundt_quadruple(q, ZERO3, sl2()).kundt_valid
    assert is_subalgebra(sl2(), q.b) and q.a.dim == 1
    with pytest.raises(ValueError):
        example_3dim(filiform4())


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["I", "II", "III", "IV", "V", "VI_h", "VII_h", "VIII"]))
def test_example_3dim_survives_basis_change(seed, name):
    lie = bianchi_presets()[name].change_basis(random_basis_change(random.Random(seed), 3))
    q = example_3dim(lie)
    assert is_kundt_quadruple(q, ZERO3, lie).kundt_valid


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["II", "IV", "VIII"]))
def test_kundt_verdict_is_basis_independent(seed, name):
    rng = random.Random(seed)
    lie = bianchi_presets()[name]
    q = random_quadruple(rng, lie, closed=rng.random() < 0.5)
    p = random_basis_change(rng, 3)
    p_inv = linalg.inverse(p)
    moved = lie.change_basis(p)

    def conv(s):
        return Subspace.span(3, [list(linalg.matmul(p_inv, np.array(v, dtype=object).reshape(3, 1)).flat)
                                 for v in s.vectors()])

    q2 = InvariantQuadruple(conv(q.a), conv(q.b), q.gram, q.beta)
    before = is_kundt_quadruple(q, ZERO3, lie).kundt_valid
    after = is_kundt_quadruple(q2, ZERO3, moved).kundt_valid
    assert before == after


# -- nilpotency --------------------------------------------------------------

def test_lower_central_series_examples():
    assert [s.dim for s in lower_central_series(abelian(3))] == [3, 0]
    assert [s.dim for s in lower_central_series(heisenberg())] == [3, 1, 0]
    assert [s.dim for s in lower_central_series(sl2())] == [3]
    assert [s.dim for s in lower_central_series(filiform4())] == [4, 2, 1, 0]
    assert is_nilpotent(filiform4()) and not is_nilpotent(sl2())


def test_nilpotent_conditions_examples():
    q = example_3dim(heisenberg())
    assert all(nilpotent_conditions(heisenberg(), q).values())
    q = InvariantQuadruple(span(3, e(3, 0)), span(3, e(3, 0), e(3, 1)), [[1]], 1)
    assert all(nilpotent_conditions(abelian(3), q).values())
    q = InvariantQuadruple(span(4, e(4, 3)), span(4, e(4, 1), e(4, 2), e(4, 3)),
                           linalg.identity(2), 1)
    assert is_kundt_quadruple(q, Subspace.zero(4), filiform4()).kundt_valid
    assert all(nilpotent_conditions(filiform4(), q).values())
    with pytest.raises(ValueError):
        nilpotent_conditions(sl2(), example_3dim(sl2()))


# -- group realizations ------------------------------------------------------

@pytest.mark.parametrize("name", GROUP_PRESETS)
def test_left_invariant_frames_have_algebra_brackets(name):
    assert all(x == 0 for x in np.ravel(left_invariant_bracket_defect(name)))


def test_realize_heisenberg_center():
    q = example_3dim(heisenberg())
    metric, quad, x = realize_group_metric("Heisenberg3", q)
    assert chart_kundt_verdict(metric, quad, x)["verdict"] is True


def test_realize_bianchi_viii_borel():
    q = example_3dim(sl2())
    metric, quad, x = realize_group_metric("Bianchi_VIII", q)
    assert chart_kundt_verdict(metric, quad, x)["verdict"] is True


def test_realize_abelian_is_flat():
    q = InvariantQuadruple(span(3, e(3, 0)), span(3, e(3, 0), e(3, 1)), [[1]], 1)
    metric, quad, x = realize_group_metric("abelian", q)
    assert all(getattr(v, "is_zero", lambda: v == 0)() for v in np.ravel(metric.g) if not
               isinstance(v, int))
    assert chart_kundt_verdict(metric, quad, x)["verdict"] is True


def test_realize_rejects_invalid_quadruple():
    q = InvariantQuadruple(span(3, e(3, 0)), span(3, e(3, 0), e(3, 1)), [[1]], 0)
    with pytest.raises(ValueError):
        realize_group_metric("Heisenberg3", q)
    with pytest.raises(KeyError):
        group_preset("nope")


def test_realize_negative_quadruple_fails_chart_side():
    q = InvariantQuadruple(span(3, e(3, 0)), span(3, e(3, 0), e(3, 1)), [[1]], 1)
    assert not is_kundt_quadruple(q, ZERO3, heisenberg()).kundt_valid
    metric, quad, x = realize_group_metric("Heisenberg3", q)
    assert chart_kundt_verdict(metric, quad, x)["verdict"] is False


def test_realize_conjugated_borel_needs_rational_rescaling():
    # lambda is a mixed combination of the sl2 fields, so no monomial rescaling exists
    q = InvariantQuadruple(span(3, [10, -6, 6]), span(3, [-9, 6, 0], [1, 0, 6]), [[10]], -1)
    lie = sl2()
    metric, quad, x = realize_group_metric("Bianchi_VIII", q)
    verdict = chart_kundt_verdict(metric, quad, x)["verdict"]
    assert verdict is is_kundt_quadruple(q, ZERO3, lie).kundt_valid
