"""Rational functions over chart coordinates.

A :class:`RatFunc` always has a non-constant, monic (grlex) denominator;
:func:`ratfunc` demotes anything with a constant denominator to a
:class:`Poly`.  Numerator and denominator are not forced to be coprime;
equality and zero tests are exact regardless (cross-multiplication), and
:meth:`RatFunc.cancel` reduces by the polynomial gcd on demand.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly
from .scalar import StructuralError, format_scalar, is_scalar, normalize


def ratfunc(num, den=1):
    """Canonical quotient ``num / den``: a Poly when ``den`` cancels."""
    if is_scalar(num) and is_scalar(den):
        return normalize(Fraction(num) / Fraction(den))
    vars = num.vars if isinstance(num, Poly) else den.vars
    if not isinstance(num, Poly):
        num = Poly.const(vars, num)
    if not isinstance(den, Poly):
        den = Poly.const(vars, den)
    if num.vars != den.vars:
        raise StructuralError(f"variable lists differ: {num.vars} vs {den.vars}")
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return num
    if den.is_constant():
        return num * (1 / Fraction(den.constant_value()))
    _, lc = den.leading()
    if lc != 1:
        inv = 1 / Fraction(lc)
        num, den = num * inv, den * inv
    shared = tuple(min(a, b) for a, b in zip(num.monomial_gcd(), den.monomial_gcd()))
    if any(shared):
        num, den = num.shift_down(shared), den.shift_down(shared)
        if den.is_constant():
            return num * (1 / Fraction(den.constant_value()))
    q = num.exact_div(den)
    if q is not None:
        return q
    return RatFunc._raw(num, den)


def parts(x, vars=None) -> tuple[Poly, Poly]:
    """(numerator, denominator) of a scalar, Poly or RatFunc."""
    if isinstance(x, RatFunc):
        return x.num, x.den
    if isinstance(x, Poly):
        return x, Poly.const(x.vars, 1)
    if is_scalar(x):
        if vars is None:
            raise StructuralError("need a variable list to lift a scalar")
        return Poly.const(vars, x), Poly.const(vars, 1)
    raise TypeError(f"not a field element: {x!r}")


class RatFunc:
    """Quotient of two polynomials over the same variables."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        value = ratfunc(num, den)
        if isinstance(value, RatFunc):
            self.num, self.den = value.num, value.den
        else:
            raise ValueError("denominator cancels; use ratfunc() to get a Poly")

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self) -> bool:
        return False

    def __bool__(self) -> bool:
        return True

    # -- arithmetic -----------------------------------------------------

    def _split(self, other):
        if isinstance(other, (RatFunc, Poly)):
            if other.vars != self.vars:
                raise StructuralError(f"variable lists differ: {self.vars} vs {other.vars}")
            return parts(other)
        if is_scalar(other):
            return parts(other, self.vars)
        return None

    def __add__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return _add(self.num, self.den, o[0], o[1])

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return _add(self.num, self.den, -o[0], o[1])

    def __rsub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return _add(o[0], o[1], -self.num, self.den)

    def __mul__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return _mul(self.num, self.den, o[0], o[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        if o[0].is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return _mul(self.num, self.den, o[1], o[0])

    def __rtruediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return _mul(o[0], o[1], self.den, self.num)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("integer powers only")
        if k < 0:
            return ratfunc(self.den ** (-k), self.num ** (-k))
        return RatFunc._raw(self.num ** k, self.den ** k)

    # -- calculus and evaluation ----------------------------------------

    def diff(self, name: str):
        dn = self.num.diff(name)
        dd = self.den.diff(name)
        if dd.is_zero():
            return ratfunc(dn, self.den)
        return ratfunc(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return normalize(Fraction(self.num.evaluate(point)) / d)

    def cancel(self):
        """Reduce by the multivariate gcd of numerator and denominator."""
        g = poly_gcd(self.num, self.den)
        if g.is_constant():
            return self
        return ratfunc(self.num.exact_div(g), self.den.exact_div(g))

    def with_vars(self, vars):
        return ratfunc(self.num.with_vars(vars), self.den.with_vars(vars))

    def used_vars(self) -> set[str]:
        return self.num.used_vars() | self.den.used_vars()

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        o = self._split(other) if isinstance(other, (RatFunc, Poly)) or is_scalar(other) else None
        if o is None:
            return NotImplemented
        return self.num * o[1] == o[0] * self.den

    def __hash__(self):
        c = self.cancel()
        if isinstance(c, RatFunc):
            return hash((c.num, c.den))
        return hash(c)

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        return f"({self.num})/({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _add(n1: Poly, d1: Poly, n2: Poly, d2: Poly):
    if d1 == d2:
        return ratfunc(n1 + n2, d1)
    if d1.is_one():
        return ratfunc(n1 * d2 + n2, d2)
    if d2.is_one():
        return ratfunc(n1 + n2 * d1, d1)
    q = d2.exact_div(d1)
    if q is not None:
        return ratfunc(n1 * q + n2, d2)
    q = d1.exact_div(d2)
    if q is not None:
        return ratfunc(n1 + n2 * q, d1)
    return ratfunc(n1 * d2 + n2 * d1, d1 * d2)


def _mul(n1: Poly, d1: Poly, n2: Poly, d2: Poly):
    if n1.is_zero() or n2.is_zero():
        return n1 * 0
    if not d2.is_one():
        q = n1.exact_div(d2)
        if q is not None:
            n1, d2 = q, Poly.const(d2.vars, 1)
    if not d1.is_one():
        q = n2.exact_div(d1)
        if q is not None:
            n2, d1 = q, Poly.const(d1.vars, 1)
    return ratfunc(n1 * n2, d1 * d2)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Multivariate gcd over QQ, delegated to sympy."""
    from sympy import QQ
    from sympy import Poly as SPoly
    from sympy import symbols

    if a.is_zero():
        return b
    if b.is_zero():
        return a
    gens = symbols(list(a.vars)) if len(a.vars) > 1 else (symbols(a.vars[0]),)
    sa = SPoly.from_dict({e: QQ(c.numerator, c.denominator) if isinstance(c, Fraction) else QQ(c)
                          for e, c in a.items()}, *gens, domain=QQ)
    sb = SPoly.from_dict({e: QQ(c.numerator, c.denominator) if isinstance(c, Fraction) else QQ(c)
                          for e, c in b.items()}, *gens, domain=QQ)
    g = sa.gcd(sb)
    terms = {}
    for e, c in g.terms():
        terms[e] = Fraction(int(c.numerator), int(c.denominator))
    return Poly(a.vars, terms)


# ---------------------------------------------------------------------------
# helpers treating scalars, Poly and RatFunc uniformly


def diff(x, name: str):
    if is_scalar(x):
        return 0
    return x.diff(name)


def evaluate(x, point):
    if is_scalar(x):
        return x
    return x.evaluate(point)


def is_zero(x) -> bool:
    if is_scalar(x):
        return not x
    return x.is_zero()


def as_field(x, vars):
    """Lift a scalar into the function field over ``vars``."""
    if is_scalar(x):
        return Poly.const(vars, x)
    return x


def to_json(x):
    if is_scalar(x):
        return format_scalar(x)
    if isinstance(x, RatFunc):
        x = x.cancel()
    return x.to_json()


def from_json(data, vars):
    """Decode a scalar string, polynomial object, expression string or quotient."""
    if isinstance(data, (int,)) and not isinstance(data, bool):
        return Poly.const(vars, data)
    if isinstance(data, str):
        return Poly.parse(data, vars)
    if isinstance(data, dict) and "num" in data:
        num = from_json(data["num"], vars)
        den = from_json(data["den"], vars)
        return ratfunc(num, den)
    if isinstance(data, dict) and "terms" in data:
        return Poly.from_json(data).with_vars(vars)
    raise ValueError(f"cannot decode field element from {data!r}")


def to_text(x) -> str:
    if isinstance(x, RatFunc):
        x = x.cancel()
    if is_scalar(x):
        return format_scalar(x)
    return str(x)
