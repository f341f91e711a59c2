"""Vector fields, metrics and null-quadruples on a single coordinate chart.

Field components are exact scalars, :class:`Poly` or :class:`RatFunc` over
the chart coordinates.  Vector fields are 1-d object arrays; metrics and
Gram matrices are 2-d object arrays.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field

import numpy as np

from ..algebra import linalg
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc, diff, evaluate, from_json, is_zero, ratfunc
from ..algebra.scalar import StructuralError, is_scalar, normalize, random_rational
from ..boost import CO, AdaptedFrame, Tensor, component_weight, to_frame_components
from ..report import Violation


def default_coords(n: int) -> tuple[str, ...]:
    return ("u", "v") + tuple(f"x{i}" for i in range(1, n - 1))


def lift(x, coords):
    """Coerce a JSON value, string, scalar, Poly or RatFunc into a field element."""
    if isinstance(x, (Poly, RatFunc)):
        if x.vars != tuple(coords):
            return x.with_vars(coords)
        return x
    if is_scalar(x):
        return x
    return from_json(x, coords)


def vector(coords, comps) -> np.ndarray:
    if len(comps) != len(coords):
        raise StructuralError(f"vector field needs {len(coords)} components, got {len(comps)}")
    out = np.empty(len(coords), dtype=object)
    for i, c in enumerate(comps):
        out[i] = lift(c, coords)
    return out


def matrix(coords, rows) -> np.ndarray:
    rows = list(rows)
    size = len(rows)
    out = np.empty((size, size), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != size:
            raise StructuralError(f"row {i} has {len(row)} entries, expected {size}")
        for j, c in enumerate(row):
            out[i, j] = lift(c, coords)
    return out


def coordinate_field(coords, i: int) -> np.ndarray:
    return np.array([1 if j == i else 0 for j in range(len(coords))], dtype=object)


def apply(x: np.ndarray, f, coords):
    """Directional derivative X(f)."""
    total = 0
    for a, name in enumerate(coords):
        if not is_zero(x[a]):
            d = diff(f, name)
            if not is_zero(d):
                total = total + x[a] * d
    return total


def bracket(x: np.ndarray, y: np.ndarray, coords) -> np.ndarray:
    out = np.empty(len(coords), dtype=object)
    for a in range(len(coords)):
        out[a] = apply(x, y[a], coords) - apply(y, x[a], coords)
    return out


def pair(g: np.ndarray, x, y):
    """g(X, Y) = X^a g_ab Y^b."""
    total = 0
    n = len(x)
    for a in range(n):
        if is_zero(x[a]):
            continue
        for b in range(n):
            if is_zero(y[b]) or is_zero(g[a, b]):
                continue
            total = total + x[a] * g[a, b] * y[b]
    return total


def lower(g: np.ndarray, x) -> np.ndarray:
    n = len(x)
    out = np.empty(n, dtype=object)
    for b in range(n):
        out[b] = sum((g[b, c] * x[c] for c in range(n) if not is_zero(x[c])), 0)
    return out


def one_form_apply(w, x):
    return sum((w[a] * x[a] for a in range(len(x)) if not is_zero(w[a]) and not is_zero(x[a])), 0)


def lie_derivative(x: np.ndarray, t: Tensor, coords, k: int = 1) -> Tensor:
    """k-fold Lie derivative of a tensor field along X in coordinates."""
    if k < 1:
        raise ValueError("repetition count must be >= 1")
    n = len(coords)
    dx = [[diff(x[c], coords[a]) for c in range(n)] for a in range(n)]  # dx[a][c] = d_a X^c
    for _ in range(k):
        comps = t.components
        out = np.empty(comps.shape, dtype=object)
        for idx in np.ndindex(comps.shape):
            val = apply(x, comps[idx], coords)
            for slot, var in enumerate(t.variance):
                for c in range(n):
                    j = list(idx)
                    if var == CO:
                        # + T_{..c..} d_{i} X^c
                        coef = dx[idx[slot]][c]
                    else:
                        # - T^{..c..} d_c X^{i}
                        coef = dx[c][idx[slot]]
                    if is_zero(coef):
                        continue
                    j[slot] = c
                    tc = comps[tuple(j)]
                    if is_zero(tc):
                        continue
                    val = val + tc * coef if var == CO else val - tc * coef
            out[idx] = val
        t = Tensor(t.variance, out)
    return t


def frobenius_integrable(fields, coords) -> bool | Violation:
    """Every pairwise bracket must lie in the pointwise span of the fields."""
    fields = [np.asarray(f, dtype=object) for f in fields]
    base = np.array([list(f) for f in fields], dtype=object)
    r = linalg.rank(base) if fields else 0
    if r < len(fields):
        raise ValueError("fields are linearly dependent")
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            b = bracket(fields[i], fields[j], coords)
            if linalg.is_zero_array(b):
                continue
            ext = np.array([list(f) for f in fields] + [list(b)], dtype=object)
            if linalg.rank(ext) > r:
                return Violation("frobenius", "bracket", f"[F{i}, F{j}] leaves the span",
                                 {"i": i, "j": j, "bracket": list(b)})
    return True


@dataclass
class ChartMetric:
    coords: tuple[str, ...]
    g: np.ndarray

    def __post_init__(self):
        self.coords = tuple(self.coords)
        self.g = np.asarray(self.g, dtype=object)
        n = len(self.coords)
        if len(set(self.coords)) != n:
            raise StructuralError(f"coordinate names must be distinct: {self.coords}")
        if self.g.shape != (n, n):
            raise StructuralError(f"metric must be {n}x{n}, got {self.g.shape}")
        if not linalg.arrays_equal(self.g, self.g.T):
            raise StructuralError("metric matrix is not symmetric")

    @classmethod
    def build(cls, coords, rows) -> "ChartMetric":
        return cls(tuple(coords), matrix(coords, rows))

    @property
    def n(self) -> int:
        return len(self.coords)

    def det(self):
        return linalg.det(self.g)

    def check_nondegenerate(self):
        if is_zero(self.det()):
            raise ValueError("metric is identically degenerate")

    def tensor(self) -> Tensor:
        return Tensor.covariant2(self.g)

    def __add__(self, other: "ChartMetric") -> "ChartMetric":
        _same_chart(self.coords, other.coords)
        return ChartMetric(self.coords, self.g + other.g)

    def __sub__(self, other: "ChartMetric") -> "ChartMetric":
        _same_chart(self.coords, other.coords)
        return ChartMetric(self.coords, self.g - other.g)


@dataclass
class ChartNullQuadruple:
    """(lambda, Lambda, gperp, f) with Lambda[0] = lambda and a designated transversal Y."""

    coords: tuple[str, ...]
    lam: np.ndarray
    Lambda: list
    gperp: np.ndarray
    f_value: object
    transversal: np.ndarray | None = None
    _frame: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.coords = tuple(self.coords)
        n = len(self.coords)
        self.lam = np.asarray(self.lam, dtype=object)
        self.Lambda = [np.asarray(w, dtype=object) for w in self.Lambda]
        self.gperp = np.asarray(self.gperp, dtype=object)
        if len(self.Lambda) != n - 1:
            raise StructuralError(f"Lambda needs {n - 1} fields, got {len(self.Lambda)}")
        if self.gperp.shape != (n - 2, n - 2):
            raise StructuralError(f"gperp must be {(n - 2, n - 2)}, got {self.gperp.shape}")
        if not linalg.parallel(self.Lambda[0], self.lam) or linalg.is_zero_array(self.Lambda[0]):
            raise StructuralError("the first Lambda field must span lambda")
        if self.transversal is None:
            self.transversal = self._pick_transversal()
        else:
            self.transversal = np.asarray(self.transversal, dtype=object)

    def _pick_transversal(self) -> np.ndarray:
        base = np.array([list(w) for w in self.Lambda], dtype=object)
        for i in range(len(self.coords)):
            e = coordinate_field(self.coords, i)
            ext = np.vstack([base, e[None, :]])
            if linalg.rank(ext) == len(self.coords):
                return e
        raise StructuralError("Lambda fields do not span a hyperplane")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def screen(self) -> list:
        return self.Lambda[1:]

    def frame_matrix(self) -> np.ndarray:
        """Columns (lambda, Y, Lambda_1..): an adapted frame of field elements."""
        if self._frame is None:
            cols = [self.lam, self.transversal] + self.screen
            self._frame = np.array([list(c) for c in cols], dtype=object).T.copy()
        return self._frame

    def frame(self) -> AdaptedFrame:
        return AdaptedFrame(self.frame_matrix())


def standard_quadruple(coords, f_value=1) -> ChartNullQuadruple:
    """lambda = d_v, Lambda = {d_v, d_x^i}, gperp = identity, Y = d_u."""
    n = len(coords)
    lam = coordinate_field(coords, 1)
    screen = [coordinate_field(coords, i) for i in range(2, n)]
    return ChartNullQuadruple(tuple(coords), lam, [lam] + screen, linalg.identity(n - 2),
                              lift(f_value, coords) if not is_scalar(f_value) else f_value,
                              coordinate_field(coords, 0))


def _same_chart(a, b):
    if tuple(a) != tuple(b):
        raise StructuralError(f"chart mismatch: {tuple(a)} vs {tuple(b)}")


def metric_belongs(g: ChartMetric, q: ChartNullQuadruple) -> bool | Violation:
    _same_chart(g.coords, q.coords)
    gm = g.g
    if not is_zero(pair(gm, q.lam, q.lam)):
        return Violation("metric-belongs", "lambda-null", "g(lambda, lambda) != 0",
                         {"value": pair(gm, q.lam, q.lam)})
    for i, w in enumerate(q.Lambda):
        val = pair(gm, q.lam, w)
        if not is_zero(val):
            return Violation("metric-belongs", "lambda-perp", "g(lambda, Lambda) != 0",
                             {"Lambda_index": i, "value": val})
    for i, w in enumerate(q.screen):
        for j, w2 in enumerate(q.screen):
            if j < i:
                continue
            diff_ = pair(gm, w, w2) - q.gperp[i, j]
            if not is_zero(diff_):
                return Violation("metric-belongs", "gperp", "g on Lambda/lambda differs from gperp",
                                 {"i": i, "j": j, "difference": diff_})
    val = pair(gm, q.lam, q.transversal) - q.f_value
    if not is_zero(val):
        return Violation("metric-belongs", "f-value", "g(lambda, Y) differs from f",
                         {"difference": val})
    return True


def field_boost_check(t: Tensor, q: ChartNullQuadruple, max_weight: int):
    """First frame component (symbolic) with weight above ``max_weight``, or None."""
    fc = to_frame_components(t, q.frame()) if t.variance.count(CO) == t.rank else None
    if fc is None:
        raise StructuralError("field boost checks here take covariant tensors")
    for idx, x in np.ndenumerate(fc.components):
        w = component_weight(t.variance, idx)
        if w > max_weight and not is_zero(x):
            return tuple(int(i) for i in idx), w, x
    return None


def affine_shift(g: ChartMetric, t, q: ChartNullQuadruple) -> ChartMetric:
    """g + T for a symmetric covariant type-III field T."""
    tm = t.components if isinstance(t, Tensor) else np.asarray(t, dtype=object)
    if not linalg.arrays_equal(tm, tm.T):
        raise ValueError("shift tensor is not symmetric")
    bad = field_boost_check(Tensor.covariant2(tm), q, -1)
    if bad is not None:
        idx, w, _ = bad
        raise ValueError(f"shift tensor is not type III: frame component {idx} has weight {w}")
    return ChartMetric(g.coords, g.g + tm)


def natural_dual(x, q: ChartNullQuadruple) -> np.ndarray:
    """The 1-form vanishing on Lambda with value f(X (x) [Y]) on the transversal."""
    x = np.asarray(x, dtype=object)
    phi = proportionality(x, q.lam)
    if phi is None:
        raise ValueError("X does not lie in lambda")
    cols = q.Lambda + [q.transversal]
    b = np.array([list(c) for c in cols], dtype=object)  # rows: fields
    rhs = [0] * (q.n - 1) + [phi * q.f_value]
    sol = linalg.solve_linear(b, rhs)
    if sol is None or sol.nullspace:
        raise ValueError("Lambda together with the transversal is not a frame")
    return sol.solution


def proportionality(x, lam):
    """phi with x = phi * lam, or None when x is not in span(lam)."""
    if not linalg.parallel(x, lam):
        return None
    for a in range(len(lam)):
        if not is_zero(lam[a]):
            return ratio(x[a], lam[a])
    return None


def ratio(a, b):
    """Exact quotient a / b of field elements."""
    if is_scalar(b):
        if is_zero(b):
            raise ZeroDivisionError("division by zero")
        return normalize(Fraction(a) / b) if is_scalar(a) else a * (1 / Fraction(b))
    if is_scalar(a):
        a = Poly.const(b.vars, a)
    if isinstance(a, Poly) and isinstance(b, Poly):
        return ratfunc(a, b)
    return a / b


def denominators(*arrays) -> list[Poly]:
    dens = []
    for arr in arrays:
        for x in np.asarray(arr, dtype=object).flat:
            if isinstance(x, RatFunc):
                dens.append(x.den)
    return dens


def sample_points(coords, rng: random.Random, count: int, avoid=(), bound: int = 5) -> list[dict]:
    """Random rational points at which none of the polynomials in ``avoid`` vanish."""
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 100 * count + 100:
            raise RuntimeError("could not find sample points off the denominator zero set")
        pt = {c: random_rational(rng, bound, 3) for c in coords}
        if all(evaluate(p, pt) != 0 for p in avoid):
            points.append(pt)
    return points
