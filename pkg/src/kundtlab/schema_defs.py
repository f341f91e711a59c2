"""Builds the JSON schemas for every job kind.

Run ``python3 -m kundtlab.schema_defs DIR...`` to (re)write the published
copies; the packaged files under ``kundtlab/schemas`` are what the CLI loads.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

DRAFT = "https://json-schema.org/draft/2020-12/schema"

SCALAR = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"}
POLY = {
    "type": "object",
    "additionalProperties": False,
    "required": ["vars", "terms"],
    "properties": {
        "vars": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["e", "c"],
                "properties": {
                    "e": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "c": {"$ref": "#/$defs/scalar"},
                },
            },
        },
    },
}
QUOTIENT = {
    "type": "object",
    "additionalProperties": False,
    "required": ["num", "den"],
    "properties": {"num": {"$ref": "#/$defs/field"}, "den": {"$ref": "#/$defs/field"}},
}
# strings are scalars or polynomial expressions such as "2*x1^2 - u"
FIELD = {"anyOf": [{"type": "string", "minLength": 1}, {"$ref": "#/$defs/poly"},
                   {"$ref": "#/$defs/quotient"}]}
MATRIX = {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/scalar"}}}
FIELD_MATRIX = {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/field"}}}
FIELD_VECTOR = {"type": "array", "items": {"$ref": "#/$defs/field"}}
BRACKET = {
    "type": "object",
    "additionalProperties": False,
    "required": ["i", "j", "k", "c"],
    "properties": {
        "i": {"type": "integer", "minimum": 1},
        "j": {"type": "integer", "minimum": 1},
        "k": {"type": "integer", "minimum": 1},
        "c": {"$ref": "#/$defs/scalar"},
    },
}
LIE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["dim", "brackets"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "name": {"type": "string"},
        "brackets": {"type": "array", "items": {"$ref": "#/$defs/bracket"}},
    },
}
QUADRUPLE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["a", "b", "gram", "beta"],
    "properties": {
        "a": {"$ref": "#/$defs/matrix"},
        "b": {"$ref": "#/$defs/matrix"},
        "gram": {"$ref": "#/$defs/matrix"},
        "beta": {"$ref": "#/$defs/scalar"},
    },
}
CHART_QUADRUPLE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["lambda", "Lambda", "gperp", "f_value"],
    "properties": {
        "lambda": {"$ref": "#/$defs/field_vector"},
        "Lambda": {"$ref": "#/$defs/field_matrix"},
        "gperp": {"$ref": "#/$defs/field_matrix"},
        "f_value": {"$ref": "#/$defs/field"},
        "transversal": {"$ref": "#/$defs/field_vector"},
    },
}
COORDS = {"type": "array", "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z0-9_]*$"},
          "minItems": 1}

DEFS = {"scalar": SCALAR, "poly": POLY, "quotient": QUOTIENT, "field": FIELD, "matrix": MATRIX,
        "field_matrix": FIELD_MATRIX, "field_vector": FIELD_VECTOR, "bracket": BRACKET,
        "lie_algebra": LIE, "quadruple": QUADRUPLE, "chart_quadruple": CHART_QUADRUPLE,
        "coords": COORDS}


def _obj(required, properties):
    return {"type": "object", "additionalProperties": False, "required": required,
            "properties": properties}


def _chart_problem(extra_required, extra):
    props = {"coords": {"$ref": "#/$defs/coords"}, "metric": {"$ref": "#/$defs/field_matrix"},
             "quadruple": {"$ref": "#/$defs/chart_quadruple"}}
    props.update(extra)
    return _obj(["coords", "metric", "quadruple"] + extra_required, props)


KINDS = {
    "gn-check": _obj(["matrix"], {"matrix": {"$ref": "#/$defs/matrix"}}),
    "tensor-classify": _obj(["tensor"], {
        "tensor": _obj(["variance", "n", "components"], {
            "variance": {"type": "array", "items": {"enum": ["co", "contra"]}},
            "n": {"type": "integer", "minimum": 2},
            "components": {"type": "array", "items": {"$ref": "#/$defs/scalar"}},
        }),
        "frame": {"$ref": "#/$defs/matrix"},
        "gn": {"$ref": "#/$defs/matrix"},
    }),
    "metric-belongs": _chart_problem([], {
        "checks": {"type": "array", "uniqueItems": True,
                   "items": {"enum": ["metric", "connection", "curvature"]}},
    }),
    "kundt-verify": _chart_problem(["X"], {"X": {"$ref": "#/$defs/field_vector"},
                                           "Y": {"$ref": "#/$defs/field_vector"}}),
    "degenerate-invariants": _obj(["n", "H", "W", "gt"], {
        "n": {"type": "integer", "minimum": 3},
        "coords": {"$ref": "#/$defs/coords"},
        "H": _obj(["0", "1", "2"], {k: {"$ref": "#/$defs/field"} for k in "012"}),
        "W": {"type": "array", "items": _obj(["0", "1"], {k: {"$ref": "#/$defs/field"} for k in "01"})},
        "gt": {"$ref": "#/$defs/field_matrix"},
    }),
    "lie-classify": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "algebra": {"$ref": "#/$defs/lie_algebra"},
            "preset": {"type": "string"},
            "h": {"$ref": "#/$defs/matrix"},
            "quadruple": {"$ref": "#/$defs/quadruple"},
        },
        "oneOf": [{"required": ["algebra"]}, {"required": ["preset"]}],
    },
    "bianchi-sweep": _obj([], {
        "presets": {"type": "array", "items": {"type": "string"}},
        "basis_changes": {"type": "integer", "minimum": 0},
    }),
    "cross-validate": _obj(["preset"], {
        "preset": {"type": "string"},
        "quadruples": {"type": "array", "items": {"$ref": "#/$defs/quadruple"}},
    }),
}


def build_schemas() -> dict[str, dict]:
    out = {}
    for kind, body in KINDS.items():
        schema = {"$schema": DRAFT, "$id": f"kundtlab:{kind}", "title": kind}
        schema.update(body)
        schema["$defs"] = DEFS
        out[kind] = schema
    return out


def dump(schema: dict) -> str:
    return json.dumps(schema, indent=2, sort_keys=True) + "\n"


def write_schemas(directory) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for kind, schema in build_schemas().items():
        (d / f"{kind}.json").write_text(dump(schema))


if __name__ == "__main__":
    for target in sys.argv[1:]:
        write_schemas(target)
