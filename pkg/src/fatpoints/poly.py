"""Sparse multivariate polynomials over an exact scalar field.

Terms are kept in a dict ``{exponent tuple: nonzero scalar}``.  All ordered
output (printing, coefficient vectors, matrix columns) uses graded
lexicographic order with x0 > x1 > ...
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .field import CycElement, FieldMismatch


class ArityMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


def grlex_key(exps: tuple) -> tuple:
    """Sort key; larger key means larger monomial in graded lex order."""
    return (sum(exps), exps)


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    """All exponent vectors of total degree ``d``, in descending grlex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    assert len(out) == comb(nvars - 1 + d, d)
    return out


class Poly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms: dict | None = None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise ArityMismatch(f"monomial {mono} has {len(mono)} exponents, expected {nvars}")
                c = field(c)
                if c:
                    clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, nvars, terms):
        obj = object.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def var(cls, i: int, nvars: int, field) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(field, nvars, {tuple(e): field.one})

    @classmethod
    def constant(cls, c, nvars: int, field) -> "Poly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps, field, coeff=1) -> "Poly":
        return cls(field, len(exps), {tuple(exps): coeff})

    @classmethod
    def zero(cls, nvars: int, field) -> "Poly":
        return cls._raw(field, nvars, {})

    # basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), self.field.zero)

    def monomials(self) -> list[tuple]:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def leading_term(self):
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def coeff_vector(self, monos: list[tuple]) -> list:
        """Coefficients on the given monomial list; raises if ``self`` leaves its span."""
        index = set(monos)
        extra = [m for m in self.terms if m not in index]
        if extra:
            raise ValueError(f"polynomial has monomials outside the given basis: {extra[:3]}")
        return [self.terms.get(m, self.field.zero) for m in monos]

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(other, self.nvars, self.field)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Poly._raw(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = self.field(c)
        if not c:
            return Poly.zero(self.nvars, self.field)
        return Poly._raw(self.field, self.nvars, {m: a * c for m, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m)
                terms[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(self.field, self.nvars, {m: c for m, c in terms.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(1, self.nvars, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus and evaluation -------------------------------------------

    def diff(self, var: int, times: int = 1) -> "Poly":
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range for {self.nvars} variables")
        f = self
        for _ in range(times):
            terms = {}
            for m, c in f.terms.items():
                e = m[var]
                if e:
                    nm = m[:var] + (e - 1,) + m[var + 1 :]
                    terms[nm] = c * e
            f = Poly._raw(self.field, self.nvars, {m: c for m, c in terms.items() if c})
        return f

    def diff_multi(self, orders) -> "Poly":
        """Apply d^orders[i]/dx_i^orders[i] for every i."""
        f = self
        for var, k in enumerate(orders):
            if k:
                f = f.diff(var, k)
        return f

    def evaluate(self, point):
        coords = point.coords if isinstance(point, ProjPoint) else tuple(point)
        if len(coords) != self.nvars:
            raise ArityMismatch(f"point has {len(coords)} coordinates, polynomial {self.nvars} variables")
        field = self.field
        coords = [field(c) for c in coords]
        maxe = [0] * self.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e > maxe[i]:
                    maxe[i] = e
        powers = []
        for c, top in zip(coords, maxe):
            row = [field.one]
            for _ in range(top):
                row.append(row[-1] * c)
            powers.append(row)
        total = field.zero
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    t = t * powers[i][e]
            total = total + t
        return total

    def substitute(self, images) -> "Poly":
        """Replace variable i by ``images[i]`` (polynomials sharing a common arity)."""
        images = list(images)
        if len(images) != self.nvars:
            raise ArityMismatch(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        target = images[0].nvars
        for g in images:
            if not isinstance(g, Poly) or g.nvars != target:
                raise ArityMismatch("images must be polynomials with a common number of variables")
            if g.field != self.field:
                raise FieldMismatch(f"{self.field} vs {g.field}")
        # pure re-indexing keeps terms intact and is much faster
        perm = []
        for g in images:
            if len(g.terms) == 1:
                (m, c), = g.terms.items()
                if c == 1 and sum(m) == 1:
                    perm.append(m.index(1))
                    continue
            perm = None
            break
        if perm is not None:
            terms: dict = {}
            for m, c in self.terms.items():
                nm = [0] * target
                for i, e in enumerate(m):
                    nm[perm[i]] += e
                nm = tuple(nm)
                terms[nm] = terms.get(nm, self.field.zero) + c
            return Poly._raw(self.field, target, {m: c for m, c in terms.items() if c})
        cache = [{} for _ in images]
        total = Poly.zero(target, self.field)
        for m, c in self.terms.items():
            t = Poly.constant(c, target, self.field)
            for i, e in enumerate(m):
                if e:
                    pw = cache[i].get(e)
                    if pw is None:
                        pw = cache[i][e] = images[i] ** e
                    t = t * pw
            total = total + t
        return total

    def exact_div(self, g: "Poly") -> "Poly":
        """Quotient ``self / g``; raises :class:`NotDivisible` if there is a remainder."""
        self._check(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        gm, gc = g.leading_term()
        ginv = gc.inverse()
        rem = self
        quot: dict = {}
        while rem:
            rm, rc = rem.leading_term()
            if any(a < b for a, b in zip(rm, gm)):
                raise NotDivisible("polynomial division leaves a remainder")
            qm = tuple(a - b for a, b in zip(rm, gm))
            qc = rc * ginv
            quot[qm] = qc
            rem = rem - Poly._raw(self.field, self.nvars, {qm: qc}) * g
        return Poly._raw(self.field, self.nvars, quot)

    # text format --------------------------------------------------------

    def to_str(self, var: str = "x") -> str:
        if not self.terms:
            return "0"
        out = []
        for m in self.monomials():
            c = self.terms[m]
            mono = "*".join(
                f"{var}{i}" if e == 1 else f"{var}{i}^{e}" for i, e in enumerate(m) if e
            )
            text = str(c)
            simple = not isinstance(c, CycElement) or c.is_rational()
            neg = simple and text.startswith("-")
            if neg:
                text = text[1:]
            if not simple:
                text = f"({text})"
            if mono:
                body = mono if text == "1" else f"{text}*{mono}"
            else:
                body = text
            out.append(("-" if neg else "+", body))
        sign, body = out[0]
        s = ("-" if sign == "-" else "") + body
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r}, nvars={self.nvars}, field={self.field})"

    @classmethod
    def parse(cls, text: str, nvars: int, field, var: str = "x") -> "Poly":
        return _PolyParser(text, nvars, field, var).parse()


def variables(nvars: int, field) -> list[Poly]:
    return [Poly.var(i, nvars, field) for i in range(nvars)]


_POLY_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)(\d*)|(.))")


class _PolyParser:
    def __init__(self, text, nvars, field, var):
        self.nvars, self.field, self.var = nvars, field, var
        self.tokens = []
        for num, name, idx, other in _POLY_TOKEN.findall(text):
            if num:
                self.tokens.append(("num", int(num)))
            elif name:
                if name == "w" and not idx:
                    self.tokens.append(("w", None))
                elif name == var and idx:
                    i = int(idx)
                    if i >= nvars:
                        raise ArityMismatch(f"{name}{idx} exceeds {nvars} variables")
                    self.tokens.append(("var", i))
                else:
                    raise ValueError(f"unknown symbol {name}{idx!s}")
            elif other.strip():
                self.tokens.append(("op", other))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        v = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input: {self.tokens[self.pos:]}")
        return v

    def expr(self):
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        elif self.peek() == ("op", "+"):
            self.take()
        v = self.term()
        if neg:
            v = -v
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.power()
            if op == "*":
                v = v * rhs
            else:
                if rhs.degree() > 0:
                    raise ValueError("division by a non-constant")
                v = v.scale(rhs.coefficient((0,) * self.nvars).inverse())
        return v

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            v = v**e
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Poly.constant(val, self.nvars, self.field)
        if kind == "w":
            return Poly.constant(self.field.primitive_root(), self.nvars, self.field)
        if kind == "var":
            return Poly.var(val, self.nvars, self.field)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return v
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


@dataclass(frozen=True)
class ProjPoint:
    """Homogeneous coordinates of a point of P^N (an affine representative)."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise ValueError("a projective point needs at least one coordinate")
        if not any(self.coords):
            raise ValueError("all coordinates are zero")

    @classmethod
    def of(cls, field, values) -> "ProjPoint":
        return cls(tuple(field(v) for v in values))

    @property
    def field(self):
        return self.coords[0].field

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def normalized(self) -> "ProjPoint":
        """Scale so the first nonzero coordinate is 1."""
        lead = next(c for c in self.coords if c)
        if lead == 1:
            return self
        inv = lead.inverse()
        return ProjPoint(tuple(c * inv for c in self.coords))

    def scaled(self, c) -> "ProjPoint":
        return ProjPoint(tuple(x * c for x in self.coords))

    def same_point(self, other: "ProjPoint") -> bool:
        return self.normalized().coords == other.normalized().coords

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


# functional interface -------------------------------------------------------


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def bracket(f: Poly, g: Poly, n: int = 3) -> Poly:
    """``f**n - g**n``; with n = 3 this is the anti-symmetric bracket [f, g]."""
    f._check(g)
    return f**n - g**n


def partial_derivative(f: Poly, var: int) -> Poly:
    return f.diff(var)


def evaluate(f: Poly, pt) -> object:
    return f.evaluate(pt)


def substitute_vars(f: Poly, images) -> Poly:
    return f.substitute(images)
