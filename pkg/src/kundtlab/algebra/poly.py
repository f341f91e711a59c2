"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalar import StructuralError, format_scalar, is_scalar, normalize, parse_scalar

Exponent = tuple[int, ...]


def grlex_key(e: Exponent):
    """Graded lexicographic key; variables compare in declaration order."""
    return (sum(e), e)


class Poly:
    """Polynomial over an ordered list of variable names.

    ``terms`` maps exponent vectors to nonzero coefficients.  Instances are
    treated as immutable; every operation returns a new polynomial.

    >>> u, v = Poly.variables(["u", "v"])
    >>> str((u + v) * (u - v))
    'u^2 - v^2'
    """

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Sequence[int], object] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise StructuralError(f"duplicate variable names in {self.vars}")
        clean: dict[Exponent, object] = {}
        width = len(self.vars)
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != width:
                raise StructuralError(
                    f"exponent vector {e} has length {len(e)}, expected {width}")
            if any(k < 0 for k in e):
                raise StructuralError(f"negative exponent in {e}")
            c = normalize(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.vars = vars
        p._terms = terms
        p._hash = None
        return p

    # -- construction ---------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "Poly":
        vars = tuple(vars)
        c = normalize(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise StructuralError(f"unknown variable {name!r}; have {vars}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: 1})

    @classmethod
    def variables(cls, vars: Sequence[str]) -> list["Poly"]:
        return [cls.var(vars, name) for name in vars]

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "Poly":
        """Parse expressions such as ``"3/2*u^2*x1 - v + 1"``."""
        return _Parser(text, tuple(vars)).parse()

    # -- basic queries --------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        """Coefficient of the constant monomial."""
        return self._terms.get((0,) * len(self.vars), 0)

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get((0,) * len(self.vars)) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((e[i] for e in self._terms), default=-1)

    def leading(self) -> tuple[Exponent, object]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise StructuralError(f"unknown variable {name!r}; have {self.vars}") from None

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise StructuralError(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if is_scalar(other):
            return Poly.const(self.vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        terms = dict(self._terms)
        for e, c in o._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = _shrink(s)
            else:
                terms.pop(e, None)
        return Poly._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if is_scalar(other):
            c = normalize(other)
            if not c:
                return Poly._raw(self.vars, {})
            if c == 1:
                return self
            return Poly._raw(self.vars, {e: _shrink(v * c) for e, v in self._terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(self._terms) < len(o._terms):
            a, b = self._terms, o._terms
        else:
            a, b = o._terms, self._terms
        terms: dict[Exponent, object] = {}
        get = terms.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                terms[e] = get(e, 0) + c1 * c2
        return Poly._raw(self.vars, {e: _shrink(c) for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if is_scalar(other):
            return self * (1 / Fraction(other))
        from .ratfunc import ratfunc
        if isinstance(other, Poly):
            return ratfunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if is_scalar(other):
            from .ratfunc import ratfunc
            return ratfunc(Poly.const(self.vars, other), self)
        return NotImplemented

    def exact_div(self, divisor: "Poly") -> "Poly | None":
        """Quotient when ``divisor`` divides ``self`` exactly, else ``None``.

        Multivariate division by a single divisor under grlex: if the
        leading term of a remainder is not divisible by the divisor's
        leading term, the division cannot be exact.
        """
        d = self._coerce(divisor)
        if d is None or not d._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return self
        if d.is_constant():
            return self * (1 / Fraction(d.constant_value()))
        lead_e, lead_c = d.leading()
        rem = dict(self._terms)
        quot: dict[Exponent, object] = {}
        dterms = list(d._terms.items())
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            shift = tuple([x - y for x, y in zip(e, lead_e)])
            if any(s < 0 for s in shift):
                return None
            q = _shrink(Fraction(c) / lead_c)
            quot[shift] = q
            for de, dc in dterms:
                te = tuple([x + y for x, y in zip(de, shift)])
                s = rem.get(te, 0) - q * dc
                if s:
                    rem[te] = _shrink(s)
                else:
                    rem.pop(te, None)
        return Poly._raw(self.vars, quot)

    # -- calculus and evaluation ----------------------------------------

    def diff(self, name: str) -> "Poly":
        i = self._index(name)
        terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Poly._raw(self.vars, terms)

    def evaluate(self, point):
        """Value at a point given as a mapping name -> scalar or a sequence."""
        values = _point_values(self.vars, point)
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(values, e):
                if k:
                    term = term * x ** k
            total = total + term
        return normalize(total)

    def substitute(self, mapping: Mapping[str, "Poly"]):
        """Replace variables by polynomials over the same variable list."""
        result = Poly.zero(self.vars)
        images = [mapping.get(v, Poly.var(self.vars, v)) for v in self.vars]
        for e, c in self._terms.items():
            term = Poly.const(self.vars, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            result = result + term
        return result

    def with_vars(self, vars: Sequence[str]) -> "Poly":
        """Re-express over a variable list containing all used variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        for i, v in enumerate(self.vars):
            if v not in pos and any(e[i] for e in self._terms):
                raise StructuralError(f"variable {v!r} is used but absent from {vars}")
        terms = {}
        for e, c in self._terms.items():
            ne = [0] * len(vars)
            for v, k in zip(self.vars, e):
                if k:
                    ne[pos[v]] = k
            terms[tuple(ne)] = c
        return Poly._raw(vars, terms)

    def used_vars(self) -> set[str]:
        return {v for i, v in enumerate(self.vars) if any(e[i] for e in self._terms)}

    def monomial_gcd(self) -> Exponent:
        """Componentwise minimum exponent over all terms."""
        if not self._terms:
            return (0,) * len(self.vars)
        it = iter(self._terms)
        low = list(next(it))
        for e in it:
            low = [min(a, b) for a, b in zip(low, e)]
        return tuple(low)

    def shift_down(self, e: Exponent) -> "Poly":
        return Poly._raw(self.vars, {tuple(a - b for a, b in zip(k, e)): c
                                     for k, c in self._terms.items()})

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self._terms == other._terms
        if is_scalar(other):
            c = normalize(other)
            if not c:
                return not self._terms
            return self.is_constant() and self.constant_value() == c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({list(self.vars)!r}, {str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_scalar(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_scalar(a)}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    # -- JSON -----------------------------------------------------------

    def to_json(self) -> dict:
        return {"vars": list(self.vars),
                "terms": [{"e": list(e), "c": format_scalar(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        vars = data["vars"]
        terms: dict[Exponent, object] = {}
        for t in data["terms"]:
            e = tuple(t["e"])
            if len(e) != len(vars):
                raise StructuralError(
                    f"exponent vector {list(e)} has length {len(e)}, expected {len(vars)}")
            terms[e] = terms.get(e, 0) + parse_scalar(t["c"])
        return cls(vars, terms)


def _shrink(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _point_values(vars, point):
    if isinstance(point, Mapping):
        try:
            return [point[v] for v in vars]
        except KeyError as exc:
            raise StructuralError(f"point lacks a value for {exc.args[0]!r}") from None
    values = list(point)
    if len(values) != len(vars):
        raise StructuralError(f"point has {len(values)} entries, expected {len(vars)}")
    return values


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...]):
        self.vars = vars
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                break
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("op", op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ValueError("empty polynomial expression")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            if op == "*":
                p = p * self.factor()
            else:
                kind, val = self.take()
                if kind != "num" or val == 0:
                    raise ValueError("division only by nonzero integer literals")
                p = p * Fraction(1, val)
        return p

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(self.vars, val)
        if kind == "name":
            return Poly.var(self.vars, val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return p
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ValueError(f"unexpected token {val!r}")


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Ring operation ``op`` in {"add", "sub", "mul"} on polynomials."""
    if not isinstance(a, Poly) or not isinstance(b, Poly):
        raise TypeError("poly_arith expects two polynomials")
    if a.vars != b.vars:
        raise StructuralError(f"variable lists differ: {a.vars} vs {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(p: Poly, name: str) -> Poly:
    return p.diff(name)


def common_vars(items: Iterable) -> tuple[str, ...] | None:
    for x in items:
        if isinstance(x, Poly):
            return x.vars
        if hasattr(x, "num"):
            return x.num.vars
    return None
