"""Fermat-type point configurations and their ideal generators.

``Z_{N,n}`` is the set of n**N points (1 : e^a1 : ... : e^aN) where e is a
primitive n-th root of unity; ``W_{N,n}`` adds the N+1 coordinate points.
Indices of variables are taken modulo N+1 throughout.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .field import CYCLOTOMIC, FieldSpec, NoRootOfUnity, make_field
from .poly import Poly, ProjPoint, bracket, variables


class UnsupportedParameters(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    N: int
    n: int
    field: object
    fermat_points: tuple
    coordinate_points: tuple

    @property
    def points(self) -> tuple:
        return self.fermat_points + self.coordinate_points

    def __len__(self):
        return len(self.fermat_points) + len(self.coordinate_points)

    def __iter__(self):
        return iter(self.points)

    def to_json(self) -> str:
        return json.dumps(
            {
                "N": self.N,
                "n": self.n,
                "field": self.field.spec.to_dict(),
                "fermat_points": [[str(c) for c in p] for p in self.fermat_points],
                "coordinate_points": [[str(c) for c in p] for p in self.coordinate_points],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Configuration":
        d = json.loads(text)
        f = make_field(FieldSpec.from_dict(d["field"]))

        def pts(key):
            return tuple(ProjPoint(tuple(f.parse(s) for s in p)) for p in d[key])

        return cls(d["N"], d["n"], f, pts("fermat_points"), pts("coordinate_points"))


def default_field(n: int):
    return make_field(FieldSpec(CYCLOTOMIC, n))


def build_configuration(N: int, n: int, field=None) -> Configuration:
    """W_{N,n}: the n**N Fermat points followed by the N+1 coordinate points."""
    if N < 1 or n < 1:
        raise UnsupportedParameters("N and n must be positive")
    field = field if field is not None else default_field(n)
    if field.n % n:
        raise NoRootOfUnity(f"{field} has no primitive {n}-th root of unity")
    eps = field.primitive_root() ** (field.n // n)
    powers = [eps**a for a in range(1, n + 1)]
    fermat = tuple(
        ProjPoint((field.one,) + tuple(powers[a] for a in alphas))
        for alphas in product(range(n), repeat=N)
    )
    coords = tuple(
        ProjPoint(tuple(field.one if i == j else field.zero for j in range(N + 1))) for i in range(N + 1)
    )
    return Configuration(N, n, field, fermat, coords)


class GeneratorKind(enum.Enum):
    CI = "ci"  # complete intersection x_i^n - x_{i+1}^n
    FERMAT_P2 = "p2"  # x(y^n - z^n), y(z^n - x^n), z(x^n - y^n)
    FERMAT_PN = "pn"  # x_i [x_{i+1}, x_j], n = 3


@dataclass(frozen=True)
class GeneratorSet:
    kind: GeneratorKind
    N: int
    n: int
    gens: tuple
    labels: tuple  # (i, j) for FERMAT_PN, i for the others

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, k):
        return self.gens[k]


def fermat_pn_labels(N: int, order: str = "cyclic") -> list[tuple[int, int]]:
    """Index pairs (i, j) of the generators x_i[x_{i+1}, x_j].

    ``order="cyclic"`` runs j = i+2, i+3, ..., i+N (mod N+1), matching the
    listing g02, g03, g13, g10, ... for N = 3.  ``order="sorted"`` runs j in
    increasing order within each i; that is the column order of the
    interpolation tables.
    """
    M = N + 1
    out = []
    for i in range(M):
        js = [(i + s) % M for s in range(2, M)]
        if order == "sorted":
            js.sort()
        elif order != "cyclic":
            raise ValueError(f"unknown order {order!r}")
        out.extend((i, j) for j in js)
    return out


def generators(kind, N: int, n: int, field=None, order: str = "cyclic") -> GeneratorSet:
    kind = GeneratorKind(kind)
    field = field if field is not None else default_field(n)
    x = variables(N + 1, field)
    if kind is GeneratorKind.CI:
        if N < 1 or n < 1:
            raise UnsupportedParameters("need N >= 1 and n >= 1")
        gens = [bracket(x[i], x[i + 1], n) for i in range(N)]
        labels = list(range(N))
    elif kind is GeneratorKind.FERMAT_P2:
        if N != 2 or n < 3:
            raise UnsupportedParameters("FermatP2 needs N = 2 and n >= 3")
        gens = [x[i] * bracket(x[(i + 1) % 3], x[(i + 2) % 3], n) for i in range(3)]
        labels = [0, 1, 2]
    else:
        if n != 3 or N < 2:
            raise UnsupportedParameters("FermatPN needs n = 3 and N >= 2")
        labels = fermat_pn_labels(N, order)
        M = N + 1
        gens = [x[i] * bracket(x[(i + 1) % M], x[j], 3) for i, j in labels]
    return GeneratorSet(kind, N, n, tuple(gens), tuple(labels))


class VanishingCheck(NamedTuple):
    ok: bool
    witness: tuple | None  # (generator index, point) of the first failure


def verify_vanishing(gens, config: Configuration) -> VanishingCheck:
    polys = gens.gens if isinstance(gens, GeneratorSet) else tuple(gens)
    for k, g in enumerate(polys):
        for pt in config.points:
            if g.evaluate(pt):
                return VanishingCheck(False, (k, pt))
    return VanishingCheck(True, None)


def rewrite_identity_check(N: int, field=None) -> bool:
    """Check the rewriting identities behind the generation argument.

    (a) x_i[x_j,x_k] = x_i[x_{i+1},x_k] - x_i[x_{i+1},x_j] for mutually
        distinct i, j, k, where both right-hand terms are generators or zero;
    (b) x_0 x_i [x_0,x_i] = x_i * x_0[x_j,x_i] - x_0 * x_i[x_j,x_0] for all
        i != 0 and j not in {0, i}.
    """
    if N < 3:
        raise UnsupportedParameters("identity check needs N >= 3")
    field = field if field is not None else default_field(3)
    M = N + 1
    x = variables(M, field)
    gs = generators(GeneratorKind.FERMAT_PN, N, 3, field)
    table = dict(zip(gs.labels, gs.gens))
    zero = Poly.zero(M, field)

    def g(i, j):
        if j == (i + 1) % M:
            return zero
        return table[(i, j)]

    for i in range(M):
        for j in range(M):
            for k in range(M):
                if len({i, j, k}) < 3:
                    continue
                lhs = x[i] * bracket(x[j], x[k])
                if lhs != x[i] * bracket(x[(i + 1) % M], x[k]) - x[i] * bracket(x[(i + 1) % M], x[j]):
                    return False
                if lhs != g(i, k) - g(i, j):
                    return False
    for i in range(1, M):
        for j in range(1, M):
            if j == i:
                continue
            lhs = x[0] * x[i] * bracket(x[0], x[i])
            if lhs != x[i] * (x[0] * bracket(x[j], x[i])) - x[0] * (x[i] * bracket(x[j], x[0])):
                return False
    return True
