"""Exact scalar fields: cyclotomic rationals Q(zeta_n) and prime fields F_p.

Both backends expose the same small surface (``zero``, ``one``,
``primitive_root()``, ``random_element``, ``parse``, coercion via
``field(value)``) and their elements support the usual arithmetic
operators, so polynomial and matrix code never needs to know which one it
is working over.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import cyclotomic_poly, isprime, primitive_root as _sympy_primitive_root, totient


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class NoRootOfUnity(FieldError):
    pass


class InvalidOrder(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


CYCLOTOMIC = "cyclotomic"
MODULAR = "modular"


@dataclass(frozen=True)
class FieldSpec:
    """Description of a coefficient field.

    ``kind`` is ``"cyclotomic"`` for Q(zeta_n) or ``"modular"`` for F_p with a
    chosen primitive n-th root of unity.
    """

    kind: str
    n: int = 1
    p: int | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "p": self.p}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return cls(d["kind"], int(d["n"]), None if d.get("p") is None else int(d["p"]))

    def __str__(self) -> str:
        if self.kind == CYCLOTOMIC:
            return f"Q(zeta_{self.n})"
        return f"GF({self.p}) with zeta_{self.n}"


def make_field(spec: FieldSpec):
    """Return the (cached) field object described by ``spec``."""
    if spec.n is None or spec.n < 1:
        raise InvalidOrder(f"root-of-unity order must be positive, got {spec.n}")
    if spec.kind == CYCLOTOMIC:
        return CyclotomicField(spec.n)
    if spec.kind == MODULAR:
        if spec.p is None:
            raise NotPrime("modular field needs a prime p")
        return PrimeField(spec.p, spec.n)
    raise FieldError(f"unknown field kind {spec.kind!r}")


# Largest primes below 2**31 are used so that numpy int64 products never
# overflow in the modular elimination kernel.
MODULAR_PRIME_BOUND = 2**31


def default_primes(n: int, count: int = 2, below: int = MODULAR_PRIME_BOUND) -> list[int]:
    """The ``count`` largest primes ``p < below`` with ``p = 1 (mod n)``."""
    out = []
    p = below - 1
    p -= (p - 1) % n
    while len(out) < count:
        if p < 2:
            raise NoRootOfUnity(f"not enough primes = 1 mod {n} below {below}")
        if isprime(p):
            out.append(p)
        p -= n
    return out


def random_scalar(field, rng: np.random.Generator, bound: int = 100):
    return field.random_element(rng, bound)


_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(.))")


class _ScalarParser:
    """Recursive-descent parser for scalar expressions in ``w``."""

    def __init__(self, field, text: str):
        self.field = field
        self.tokens = []
        for num, w, other in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", int(num)))
            elif w:
                self.tokens.append(("w", None))
            elif other.strip():
                self.tokens.append(("op", other))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input in scalar: {self.tokens[self.pos:]}")
        return value

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        value = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.power()
            value = value * rhs if op == "*" else value / rhs
        return value

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            base = base**e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.field(val)
        if kind == "w":
            return self.field.primitive_root()
        if (kind, val) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return value
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


# ---------------------------------------------------------------------------
# Q(zeta_n)
# ---------------------------------------------------------------------------


def _q(x):
    """Canonical rational: a plain int when integral, otherwise a Fraction."""
    if type(x) is int:
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class CycElement:
    """Element of Q(zeta_n) stored as its reduced residue modulo Phi_n.

    Coefficients are ints when integral and Fractions otherwise; the two
    compare and hash alike, so this only affects speed.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "CyclotomicField", coeffs):
        self.field = field
        self.coeffs = coeffs  # length phi(n)

    def _coerce(self, other):
        if isinstance(other, CycElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElement(self.field, tuple(_q(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElement(self.field, tuple(_q(a - b) for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycElement(self.field, tuple(_q(a * other) for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field._mul(self.coeffs, other.coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "CycElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        return self.field._inv(self.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycElement(self.field, tuple(_q(Fraction(a) / other) for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, CycElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = _fmt_fraction(abs(c))
            if k == 0:
                body = mag
            else:
                wpow = "w" if k == 1 else f"w^{k}"
                body = wpow if mag == "1" else f"{mag}*{wpow}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"CycElement({self}, n={self.field.n})"


class CyclotomicField:
    """The cyclotomic field Q(zeta_n) = Q[w] / Phi_n(w)."""

    kind = CYCLOTOMIC

    def __new__(cls, n: int):
        return _cyclotomic_field(n)

    @classmethod
    def _create(cls, n: int):
        if n < 1:
            raise InvalidOrder(f"root-of-unity order must be positive, got {n}")
        self = object.__new__(cls)
        self.n = n
        self.p = None
        self.phi = int(totient(n))
        # Phi_n, low degree first, monic
        self.modulus = [int(c) for c in reversed(cyclotomic_poly(n, polys=True).all_coeffs())]
        # w^k mod Phi_n for k < 2*phi - 1
        red = []
        for k in range(2 * self.phi - 1):
            vec = [0] * (k + 1)
            vec[k] = 1
            red.append(tuple(self._reduce_int(vec)))
        self._powers = red
        self.zero = CycElement(self, (0,) * self.phi)
        self.one = self(1)
        self._zeta = CycElement(self, tuple(self._reduce_int([0, 1])))
        return self

    def _reduce_int(self, vec):
        vec = list(vec)
        phi = self.phi
        for k in range(len(vec) - 1, phi - 1, -1):
            c = vec[k]
            if c:
                vec[k] = 0
                for i, m in enumerate(self.modulus[:-1]):
                    vec[k - phi + i] -= c * m
        vec = vec[:phi] + [0] * (phi - len(vec))
        return vec

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(CYCLOTOMIC, self.n)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash((CYCLOTOMIC, self.n))

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __str__(self):
        return str(self.spec)

    def __reduce__(self):
        return (CyclotomicField, (self.n,))

    def __call__(self, value) -> CycElement:
        if isinstance(value, CycElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return CycElement(self, (_q(value),) + (0,) * (self.phi - 1))
        if isinstance(value, (list, tuple)):
            vec = [Fraction(v) for v in value]
            if len(vec) < self.phi:
                vec += [Fraction(0)] * (self.phi - len(vec))
            return self._from_long(vec)
        if isinstance(value, np.integer):
            return self(int(value))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def _from_long(self, vec):
        return CycElement(self, tuple(_q(c) for c in self._reduce_int(vec)))

    def _mul(self, a, b) -> CycElement:
        phi = self.phi
        if phi == 1:
            return CycElement(self, (_q(a[0] * b[0]),))
        prod = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self._powers[k]):
                    if r:
                        out[i] += c * r
        return CycElement(self, tuple(_q(c) for c in out))

    def mul_matrix(self, coeffs) -> list[list]:
        """Rows are the coordinates of ``w^k * a`` for k < phi (row-vector convention)."""
        rows = []
        for k in range(self.phi):
            vec = [0] * (k + self.phi)
            for i, c in enumerate(coeffs):
                vec[k + i] += c
            rows.append(self._reduce_int(vec) if k else list(coeffs))
        return rows

    def _inv(self, a) -> CycElement:
        # solve x * M_a = e_0 by Gauss-Jordan on the phi x phi multiplication matrix
        phi = self.phi
        m = self.mul_matrix(a)
        # column-vector system: M_a^T x = e0
        aug = [[Fraction(m[j][i]) for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [v * inv for v in aug[c]]
            for r in range(phi):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
        return CycElement(self, tuple(_q(row[-1]) for row in aug))

    def primitive_root(self) -> CycElement:
        return self._zeta

    def random_element(self, rng: np.random.Generator, bound: int = 100) -> CycElement:
        """Uniform integer in [-bound, bound] embedded as a rational constant."""
        if bound < 1:
            raise ValueError("bound must be >= 1")
        return self(int(rng.integers(-bound, bound + 1)))

    def parse(self, text: str) -> CycElement:
        return _ScalarParser(self, text).parse()

    def format(self, a: CycElement) -> str:
        return str(a)


@lru_cache(maxsize=None)
def _cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField._create(n)


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------


class ModElement:
    __slots__ = ("field", "value")

    def __init__(self, field: "PrimeField", value: int):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, ModElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        if isinstance(other, Fraction):
            return self.field(other).value
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModElement(self.field, (self.value + v) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModElement(self.field, (self.value - v) % self.field.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModElement(self.field, (v - self.value) % self.field.p)

    def __neg__(self):
        return ModElement(self.field, (-self.value) % self.field.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModElement(self.field, (self.value * v) % self.field.p)

    __rmul__ = __mul__

    def inverse(self) -> "ModElement":
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.field.p})")
        return ModElement(self.field, pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        if v == 0:
            raise ZeroDivisionError("division by zero")
        return ModElement(self.field, self.value * pow(v, -1, self.field.p) % self.field.p)

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ModElement(self.field, pow(self.value, e, self.field.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def is_rational(self) -> bool:
        return True

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, ModElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"ModElement({self.value}, p={self.field.p})"


class PrimeField:
    """F_p together with a fixed primitive n-th root of unity."""

    kind = MODULAR

    def __new__(cls, p: int, n: int = 1):
        return _prime_field(p, n)

    @classmethod
    def _create(cls, p: int, n: int):
        if n < 1:
            raise InvalidOrder(f"root-of-unity order must be positive, got {n}")
        if not isprime(p):
            raise NotPrime(f"{p} is not prime")
        if (p - 1) % n:
            raise NoRootOfUnity(f"{p} != 1 (mod {n}); no primitive {n}-th root of unity")
        self = object.__new__(cls)
        self.p = p
        self.n = n
        g = int(_sympy_primitive_root(p))
        self.zero = ModElement(self, 0)
        self.one = ModElement(self, 1 % p)
        self._zeta = ModElement(self, pow(g, (p - 1) // n, p))
        return self

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(MODULAR, self.n, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and (other.p, other.n) == (self.p, self.n)

    def __hash__(self):
        return hash((MODULAR, self.p, self.n))

    def __repr__(self):
        return f"PrimeField({self.p}, n={self.n})"

    def __str__(self):
        return str(self.spec)

    def __reduce__(self):
        return (PrimeField, (self.p, self.n))

    def __call__(self, value) -> ModElement:
        if isinstance(value, ModElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return ModElement(self, int(value) % self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return ModElement(self, value.numerator * pow(value.denominator, -1, self.p) % self.p)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def primitive_root(self) -> ModElement:
        return self._zeta

    def random_element(self, rng: np.random.Generator, bound: int = 100) -> ModElement:
        """Uniform element of F_p; ``bound`` is accepted for interface parity."""
        return ModElement(self, int(rng.integers(0, self.p)))

    def parse(self, text: str) -> ModElement:
        return _ScalarParser(self, text).parse()

    def format(self, a: ModElement) -> str:
        return str(a)


@lru_cache(maxsize=None)
def _prime_field(p: int, n: int) -> PrimeField:
    return PrimeField._create(p, n)


def lift(field, value):
    """Map an element of Q(zeta_n) with p-integral coefficients into ``field``."""
    if isinstance(value, CycElement):
        if field.kind == CYCLOTOMIC:
            return field(value)
        zeta = field.primitive_root()
        acc = field.zero
        for k, c in enumerate(value.coeffs):
            if c:
                acc = acc + field(c) * zeta**k
        return acc
    return field(value)
