"""Exact rational scalars.

Scalars are plain ``int`` or :class:`fractions.Fraction`; integral values are
kept as ``int`` because integer arithmetic is several times faster.
"""

from __future__ import annotations

import random
from fractions import Fraction
from numbers import Rational

Scalar = int | Fraction


class StructuralError(ValueError):
    """Operands do not fit together (variable lists, shapes, index ranges)."""


def normalize(c) -> Scalar:
    if type(c) is int:
        return c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return parse_scalar(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p"`` or ``"p/q"``; decimal points are rejected."""
    s = text.strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"not a 'p/q' scalar string: {text!r}")
    if "/" in s:
        p, q = s.split("/", 1)
        value = Fraction(int(p), int(q))
    else:
        value = Fraction(int(s))
    return normalize(value)


def format_scalar(c) -> str:
    c = normalize(c)
    if type(c) is int:
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def random_rational(rng: random.Random, num_bound: int = 5, den_bound: int = 4,
                    nonzero: bool = False) -> Scalar:
    while True:
        value = normalize(Fraction(rng.randint(-num_bound, num_bound),
                                   rng.randint(1, den_bound)))
        if value or not nonzero:
            return value
