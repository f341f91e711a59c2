"""Verdict objects shared by the checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    """A failed check.  Falsy, so ``if check(...)`` reads naturally."""

    check: str
    condition: str
    message: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"check": self.check, "condition": self.condition,
                "message": self.message, "witness": _jsonable(self.witness)}


def _jsonable(x):
    from .algebra.ratfunc import to_json
    from .algebra.scalar import is_scalar

    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "tolist") and not isinstance(x, (str, bytes)):
        return _jsonable(x.tolist())
    if isinstance(x, (str, bool)) or x is None:
        return x
    if is_scalar(x) or hasattr(x, "to_json"):
        return to_json(x)
    if isinstance(x, float):
        return str(x)
    return str(x)


def jsonable(x):
    return _jsonable(x)
