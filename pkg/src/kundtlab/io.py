"""Strict JSON input for every job kind.

Inputs are validated against the packaged schemas first; checks a schema
cannot express (exponent-vector lengths, bracket antisymmetry, shapes) are
then applied while building the model.  Every failure is a
:class:`SchemaError` carrying a JSON pointer to the offending value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .algebra.poly import Poly
from .algebra.ratfunc import from_json as field_from_json
from .algebra.ratfunc import ratfunc
from .algebra.scalar import StructuralError, parse_scalar
from .boost import AdaptedFrame, Tensor
from .chart.fields import ChartMetric, ChartNullQuadruple
from .degenerate import DegenerateKundtData
from .lie.algebra import LieAlgebra, Subspace
from .lie.quadruple import InvariantQuadruple

KINDS = ("gn-check", "tensor-classify", "metric-belongs", "kundt-verify",
         "degenerate-invariants", "lie-classify", "bianchi-sweep", "cross-validate")


class SchemaError(ValueError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


def _ptr(*parts) -> str:
    return "".join(f"/{str(p).replace('~', '~0').replace('/', '~1')}" for p in parts)


@lru_cache(maxsize=None)
def load_schema(kind: str) -> dict:
    if kind not in KINDS:
        raise KeyError(f"unknown kind {kind!r}")
    text = resources.files("kundtlab").joinpath("schemas", f"{kind}.json").read_text()
    return json.loads(text)


def validate(kind: str, data) -> None:
    validator = jsonschema.Draft202012Validator(load_schema(kind))
    error = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if error is not None:
        raise SchemaError(_ptr(*error.absolute_path), error.message)


# -- element decoders -------------------------------------------------------

def scalar(text: str, where: str = ""):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(where, str(exc)) from None


def matrix(rows, where: str = "") -> np.ndarray:
    if rows and len({len(r) for r in rows}) != 1:
        raise SchemaError(where, "rows have different lengths")
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = scalar(x, where + _ptr(i, j))
    return out


def square(rows, n: int | None, where: str) -> np.ndarray:
    m = matrix(rows, where)
    if m.shape[0] != m.shape[1] or (n is not None and m.shape[0] != n):
        raise SchemaError(where, f"expected a {n or m.shape[0]}x{n or m.shape[0]} matrix, got {m.shape}")
    return m


def poly(data: dict, where: str = "") -> Poly:
    n = len(data["vars"])
    for t, term in enumerate(data["terms"]):
        if len(term["e"]) != n:
            raise SchemaError(where + _ptr("terms", t, "e"),
                              f"exponent vector has length {len(term['e'])}, expected {n}")
    try:
        return Poly.from_json(data)
    except (StructuralError, ValueError) as exc:
        raise SchemaError(where, str(exc)) from None


def field(data, coords, where: str = ""):
    if isinstance(data, dict) and "terms" in data:
        p = poly(data, where)
        unknown = p.used_vars() - set(coords)
        if unknown:
            raise SchemaError(where + "/vars", f"unknown variables {sorted(unknown)}")
        return p.with_vars(coords)
    if isinstance(data, dict) and "num" in data:
        num = field(data["num"], coords, where + "/num")
        den = field(data["den"], coords, where + "/den")
        if den == 0:
            raise SchemaError(where + "/den", "zero denominator")
        return ratfunc(num, den)
    try:
        return field_from_json(data, coords)
    except (StructuralError, ValueError, KeyError, ZeroDivisionError) as exc:
        raise SchemaError(where, f"cannot parse {data!r}: {exc}") from None


def field_vector(items, coords, n: int, where: str) -> np.ndarray:
    if len(items) != n:
        raise SchemaError(where, f"expected {n} components, got {len(items)}")
    return np.array([field(x, coords, where + _ptr(i)) for i, x in enumerate(items)], dtype=object)


def field_matrix(rows, coords, n: int, where: str) -> np.ndarray:
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SchemaError(where, f"expected a {n}x{n} matrix")
    out = np.empty((n, n), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = field(x, coords, where + _ptr(i, j))
    return out


# -- models ----------------------------------------------------------------

def lie_algebra(data: dict, where: str = "") -> LieAlgebra:
    dim = data["dim"]
    entries = []
    for t, b in enumerate(data["brackets"]):
        for key in ("i", "j", "k"):
            if b[key] > dim:
                raise SchemaError(where + _ptr("brackets", t, key), f"index {b[key]} exceeds dim {dim}")
        entries.append((b["i"] - 1, b["j"] - 1, b["k"] - 1,
                        scalar(b["c"], where + _ptr("brackets", t, "c"))))
    try:
        return LieAlgebra.from_brackets(dim, entries, data.get("name", ""))
    except StructuralError as exc:
        raise SchemaError(where + "/brackets", str(exc)) from None


def lie_to_json(lie: LieAlgebra) -> dict:
    from .algebra.scalar import format_scalar

    return {"dim": lie.dim, "name": lie.name,
            "brackets": [{"i": i + 1, "j": j + 1, "k": k + 1, "c": format_scalar(c)}
                         for i, j, k, c in lie.brackets()]}


def subspace(rows, ambient: int, where: str) -> Subspace:
    m = matrix(rows, where)
    if m.size and m.shape[1] != ambient:
        raise SchemaError(where, f"vectors must have {ambient} entries")
    return Subspace.span(ambient, list(m))


def quadruple(data: dict, ambient: int, where: str = "") -> InvariantQuadruple:
    a = subspace(data["a"], ambient, where + "/a")
    b = subspace(data["b"], ambient, where + "/b")
    gram = matrix(data["gram"], where + "/gram")
    if gram.size and gram.shape[0] != gram.shape[1]:
        raise SchemaError(where + "/gram", "gram must be square")
    return InvariantQuadruple(a, b, gram, scalar(data["beta"], where + "/beta"))


@dataclass
class ChartProblem:
    metric: ChartMetric
    quadruple: ChartNullQuadruple
    extra: dict


def chart_problem(data: dict) -> ChartProblem:
    coords = tuple(data["coords"])
    if len(set(coords)) != len(coords):
        raise SchemaError("/coords", "coordinate names repeat")
    n = len(coords)
    g = field_matrix(data["metric"], coords, n, "/metric")
    try:
        metric = ChartMetric(coords, g)
    except (StructuralError, ValueError) as exc:
        raise SchemaError("/metric", str(exc)) from None
    qd = data["quadruple"]
    lam = field_vector(qd["lambda"], coords, n, "/quadruple/lambda")
    big = [field_vector(r, coords, n, f"/quadruple/Lambda/{i}") for i, r in enumerate(qd["Lambda"])]
    if len(big) != n - 1:
        raise SchemaError("/quadruple/Lambda", f"expected {n - 1} fields spanning Lambda")
    gperp = field_matrix(qd["gperp"], coords, n - 2, "/quadruple/gperp")
    f_value = field(qd["f_value"], coords, "/quadruple/f_value")
    y = field_vector(qd["transversal"], coords, n, "/quadruple/transversal") if "transversal" in qd else None
    try:
        quad = ChartNullQuadruple(coords, lam, big, gperp, f_value, y)
    except (StructuralError, ValueError) as exc:
        raise SchemaError("/quadruple", str(exc)) from None
    extra = {}
    for key in ("X", "Y"):
        if key in data:
            extra[key] = field_vector(data[key], coords, n, f"/{key}")
    if "checks" in data:
        extra["checks"] = list(data["checks"])
    return ChartProblem(metric, quad, extra)


def degenerate_data(data: dict) -> DegenerateKundtData:
    n = data["n"]
    coords = tuple(data.get("coords") or ())
    if not coords:
        from .chart.fields import default_coords
        coords = default_coords(n)
    if len(coords) != n:
        raise SchemaError("/coords", f"expected {n} coordinate names")
    h = tuple(field(data["H"][k], coords, f"/H/{k}") for k in "012")
    if len(data["W"]) != n - 2:
        raise SchemaError("/W", f"expected {n - 2} entries")
    w = [tuple(field(e[k], coords, f"/W/{i}/{k}") for k in "01") for i, e in enumerate(data["W"])]
    gt = field_matrix(data["gt"], coords, n - 2, "/gt")
    try:
        return DegenerateKundtData(n, h, w, gt, coords)
    except StructuralError as exc:
        raise SchemaError("", str(exc)) from None


def tensor(data: dict, where: str = "/tensor") -> Tensor:
    n = data["n"]
    k = len(data["variance"])
    if len(data["components"]) != n ** k:
        raise SchemaError(where + "/components", f"expected {n ** k} components, got {len(data['components'])}")
    comps = [scalar(c, where + _ptr("components", i)) for i, c in enumerate(data["components"])]
    return Tensor(tuple(data["variance"]), np.array(comps, dtype=object).reshape((n,) * k))


def frame(rows, n: int, where: str = "/frame") -> AdaptedFrame:
    m = square(rows, n, where)
    from .algebra.linalg import det
    if det(m) == 0:
        raise SchemaError(where, "frame matrix is singular")
    try:
        return AdaptedFrame(m)
    except (StructuralError, ValueError) as exc:
        raise SchemaError(where, str(exc)) from None


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise SchemaError("", f"input file {path} does not exist") from None
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from None


def validate_input(path, kind: str):
    """Parse and strictly validate ``path`` as input for ``kind``."""
    data = read_json(path)
    return parse(kind, data)


def parse(kind: str, data):
    validate(kind, data)
    if kind == "gn-check":
        return square(data["matrix"], None, "/matrix")
    if kind == "tensor-classify":
        t = tensor(data["tensor"])
        out = {"tensor": t}
        if "frame" in data:
            out["frame"] = frame(data["frame"], t.n)
        if "gn" in data:
            out["gn"] = square(data["gn"], t.n, "/gn")
        return out
    if kind in ("metric-belongs", "kundt-verify"):
        return chart_problem(data)
    if kind == "degenerate-invariants":
        return degenerate_data(data)
    if kind == "lie-classify":
        if "algebra" in data:
            lie = lie_algebra(data["algebra"], "/algebra")
        else:
            from .lie.presets import named_algebra
            try:
                lie = named_algebra(data["preset"])
            except KeyError as exc:
                raise SchemaError("/preset", str(exc.args[0])) from None
        out = {"algebra": lie,
               "h": subspace(data["h"], lie.dim, "/h") if "h" in data else Subspace.zero(lie.dim)}
        if "quadruple" in data:
            out["quadruple"] = quadruple(data["quadruple"], lie.dim, "/quadruple")
        return out
    if kind == "bianchi-sweep":
        from .lie.presets import bianchi_presets
        known = bianchi_presets()
        names = data.get("presets", list(known))
        for i, name in enumerate(names):
            if name not in known:
                raise SchemaError(_ptr("presets", i), f"unknown preset {name!r}; known: {sorted(known)}")
        return {"presets": names, "basis_changes": data.get("basis_changes", 50)}
    if kind == "cross-validate":
        from .lie.presets import GROUP_PRESETS, group_preset
        if data["preset"] not in GROUP_PRESETS:
            raise SchemaError("/preset", f"unknown group preset; known: {sorted(GROUP_PRESETS)}")
        _, lie, _ = group_preset(data["preset"])
        quads = [quadruple(q, 3, _ptr("quadruples", i)) for i, q in enumerate(data.get("quadruples", []))]
        return {"preset": data["preset"], "algebra": lie, "quadruples": quads}
    raise SchemaError("", f"unknown kind {kind!r}")
