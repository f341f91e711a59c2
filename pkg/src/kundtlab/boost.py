"""Tensors with a variance signature and their boost-weight grading.

Frames are ordered ``(X, Y, Z_1 .. Z_{n-2})`` with ``lambda = span X`` and
``Lambda = span {X, Z_i}``.  Frame-component weights per slot:

* covariant:     X -> +1, Y -> -1, Z_i -> 0
* contravariant: X -> -1, Y -> +1, Z_i -> 0

A component's boost weight is the sum over its slots.  Type II means every
nonzero component has weight <= 0, type III means <= -1.  Entries may be
exact scalars or rational functions; all zero tests are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import linalg
from .algebra.ratfunc import is_zero, to_json as field_to_json
from .algebra.scalar import StructuralError, is_scalar, normalize

CO = "co"
CONTRA = "contra"
MINUS_INFINITY = float("-inf")


def _clean(x):
    return normalize(x) if is_scalar(x) else x


class Tensor:
    """Dense components with one variance tag per slot."""

    __slots__ = ("variance", "components")

    def __init__(self, variance, components):
        variance = tuple(variance)
        for s in variance:
            if s not in (CO, CONTRA):
                raise StructuralError(f"unknown variance {s!r}")
        comps = np.asarray(components, dtype=object)
        if comps.ndim != len(variance):
            raise StructuralError(f"rank {len(variance)} tensor needs a {len(variance)}-d array")
        if comps.ndim and len(set(comps.shape)) != 1:
            raise StructuralError(f"all slots need the same extent, got {comps.shape}")
        out = np.empty(comps.shape, dtype=object)
        for idx, x in np.ndenumerate(comps):
            out[idx] = _clean(x) if not isinstance(x, str) else normalize(x)
        self.variance = variance
        self.components = out

    @classmethod
    def zeros(cls, variance, n: int) -> "Tensor":
        return cls(variance, np.zeros((n,) * len(variance), dtype=object))

    @classmethod
    def covariant2(cls, matrix) -> "Tensor":
        return cls((CO, CO), np.asarray(matrix, dtype=object))

    @property
    def rank(self) -> int:
        return len(self.variance)

    @property
    def n(self) -> int:
        return self.components.shape[0] if self.rank else 0

    def is_zero(self) -> bool:
        return all(is_zero(x) for x in self.components.flat)

    def _check(self, other: "Tensor"):
        if self.variance != other.variance or self.components.shape != other.components.shape:
            raise StructuralError("tensors differ in variance or dimension")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        return Tensor(self.variance, self.components + other.components)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        return Tensor(self.variance, self.components - other.components)

    def __neg__(self) -> "Tensor":
        return Tensor(self.variance, -self.components)

    def scale(self, c) -> "Tensor":
        return Tensor(self.variance, self.components * c)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.variance == other.variance
                and linalg.arrays_equal(self.components, other.components))

    __hash__ = None

    def outer(self, other: "Tensor") -> "Tensor":
        return Tensor(self.variance + other.variance,
                      np.multiply.outer(self.components, other.components))

    def symmetrize2(self) -> "Tensor":
        if self.rank != 2:
            raise StructuralError("symmetrize2 needs a rank-2 tensor")
        return Tensor(self.variance, self.components + self.components.T)

    def evaluate(self, point) -> "Tensor":
        from .algebra.ratfunc import evaluate

        out = np.empty(self.components.shape, dtype=object)
        for idx, x in np.ndenumerate(self.components):
            out[idx] = evaluate(x, point)
        return Tensor(self.variance, out)

    def to_json(self) -> dict:
        return {"variance": list(self.variance), "n": self.n,
                "components": [field_to_json(x) for x in self.components.flat]}

    @classmethod
    def from_json(cls, data: dict) -> "Tensor":
        variance = data["variance"]
        n = data["n"]
        flat = [normalize(c) for c in data["components"]]
        if len(flat) != n ** len(variance):
            raise StructuralError(f"expected {n ** len(variance)} components, got {len(flat)}")
        return cls(variance, np.array(flat, dtype=object).reshape((n,) * len(variance)))

    def __repr__(self):
        return f"Tensor({self.variance}, {self.components.tolist()})"


@dataclass(frozen=True)
class AdaptedFrame:
    """Columns (X, Y, Z_1..Z_{n-2}) of an invertible matrix."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=object)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise StructuralError(f"frame must be square, got {b.shape}")
        object.__setattr__(self, "basis", b)

    @classmethod
    def standard(cls, n: int) -> "AdaptedFrame":
        return cls(linalg.identity(n))

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    def acted(self, a) -> "AdaptedFrame":
        """The frame ``F . a`` (right action of a matrix)."""
        return AdaptedFrame(linalg.matmul(self.basis, np.asarray(a, dtype=object)))


def _contract_slot(comps: np.ndarray, slot: int, m: np.ndarray) -> np.ndarray:
    out = np.tensordot(comps, m, axes=([slot], [0]))
    return np.moveaxis(out, -1, slot)


def change_basis(t: Tensor, f, f_inv=None) -> Tensor:
    """Components of ``t`` in the basis given by the columns of ``f``."""
    f = np.asarray(f, dtype=object)
    if t.rank and f.shape[0] != t.n:
        raise StructuralError(f"frame of size {f.shape[0]} for a tensor in dimension {t.n}")
    comps = t.components
    if CONTRA in t.variance:
        if f_inv is None:
            f_inv = linalg.inverse(f)
        f_inv_t = np.asarray(f_inv, dtype=object).T
    for slot, var in enumerate(t.variance):
        comps = _contract_slot(comps, slot, f if var == CO else f_inv_t)
    return Tensor(t.variance, comps)


def to_frame_components(t: Tensor, frame: AdaptedFrame) -> Tensor:
    if linalg.is_zero_array([[linalg.det(frame.basis)]]):
        raise ZeroDivisionError("frame is singular")
    return change_basis(t, frame.basis)


def from_frame_components(t: Tensor, frame: AdaptedFrame) -> Tensor:
    inv = linalg.inverse(frame.basis)
    return change_basis(t, inv, frame.basis)


def pullback(t: Tensor, f) -> Tensor:
    """f*t for a linear map f (contravariant slots use f^{-1})."""
    return change_basis(t, f)


def _slot_weight(var: str, index: int) -> int:
    if index == 0:
        return 1 if var == CO else -1
    if index == 1:
        return -1 if var == CO else 1
    return 0


def weight_array(variance, n: int) -> np.ndarray:
    w = np.zeros((n,) * len(variance), dtype=int)
    for idx in itertools.product(range(n), repeat=len(variance)):
        w[idx] = sum(_slot_weight(v, i) for v, i in zip(variance, idx))
    return w


def component_weight(variance, index) -> int:
    return sum(_slot_weight(v, i) for v, i in zip(variance, index))


def frame_boost_order(fc: Tensor):
    """Boost order of a tensor already expressed in an adapted frame."""
    best = MINUS_INFINITY
    for idx, x in np.ndenumerate(fc.components):
        w = component_weight(fc.variance, idx)
        if w > best and not is_zero(x):
            best = w
    return best


def boost_decompose(t: Tensor, frame: AdaptedFrame) -> dict[int, Tensor]:
    """Homogeneous-weight pieces, each expressed back in the original basis."""
    fc = to_frame_components(t, frame)
    weights = weight_array(t.variance, t.n)
    out = {}
    for s in sorted(set(weights.flat)):
        mask = weights == s
        piece = np.where(mask, fc.components, 0)
        if all(is_zero(x) for x in piece.flat):
            continue
        out[int(s)] = from_frame_components(Tensor(t.variance, piece), frame)
    return out


def boost_order(t: Tensor, frame: AdaptedFrame):
    return frame_boost_order(to_frame_components(t, frame))


def is_type(t: Tensor, frame: AdaptedFrame, which: str) -> bool:
    order = boost_order(t, frame)
    if which == "II":
        return order <= 0
    if which == "III":
        return order <= -1
    raise ValueError(f"unknown type {which!r}; expected 'II' or 'III'")


def offending_component(t: Tensor, frame: AdaptedFrame, max_weight: int):
    """First frame component whose weight exceeds ``max_weight``, or None."""
    fc = to_frame_components(t, frame)
    for idx, x in np.ndenumerate(fc.components):
        w = component_weight(t.variance, idx)
        if w > max_weight and not is_zero(x):
            return tuple(int(i) for i in idx), w, x
    return None


def full_contraction(t: Tensor, g, pairing=None):
    """Contract all slots pairwise, using g for index gymnastics.

    ``pairing`` lists slot pairs; the default pairs slot 2i with 2i+1.
    Two covariant slots are contracted through g^{-1}, two contravariant
    ones through g, and a mixed pair directly.
    """
    if t.rank % 2:
        raise StructuralError("full contraction needs an even-rank tensor")
    g = g.components if isinstance(g, Tensor) else np.asarray(g, dtype=object)
    if linalg.is_zero_array([[linalg.det(g)]]):
        raise ZeroDivisionError("contraction metric is degenerate")
    if pairing is None:
        pairing = [(2 * i, 2 * i + 1) for i in range(t.rank // 2)]
    used = sorted(s for p in pairing for s in p)
    if used != list(range(t.rank)):
        raise StructuralError(f"pairing {pairing} does not cover every slot once")
    g_inv = linalg.inverse(g) if CO in t.variance else None
    n = t.n
    total = 0
    comps = t.components
    pairs = list(pairing)
    for idx in itertools.product(range(n), repeat=t.rank):
        c = comps[idx]
        if is_zero(c):
            continue
        term = c
        for a, b in pairs:
            va, vb = t.variance[a], t.variance[b]
            ia, ib = idx[a], idx[b]
            if va == CO and vb == CO:
                term = term * g_inv[ia, ib]
            elif va == CONTRA and vb == CONTRA:
                term = term * g[ia, ib]
            elif ia != ib:
                term = 0
            if is_zero(term):
                break
        total = total + term
    return _clean(total)
