"""Exact dense linear algebra.

Scalar matrices are reduced with one of two elimination kernels:

* over F_p the matrix is lifted to a numpy ``int64`` array (p < 2**31, so a
  product of two residues fits) and reduced with vectorised row updates;
* over Q(zeta_n) each row is scaled to integer coordinates and stored as an
  object array of shape ``(rows, cols, phi(n))``; elimination is division
  free (``row_i <- p * row_i - f * row_pivot``) followed by removal of the
  integer content of each updated row.

Matrices with polynomial entries go through fraction-free (Bareiss)
elimination instead, see :func:`symbolic_rank`.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

import numpy as np

from .field import CYCLOTOMIC, MODULAR
from .poly import Poly


class DenseMatrix:
    """Row-major matrix whose entries are field scalars or polynomials."""

    def __init__(self, rows, field=None, ncols: int | None = None):
        rows = [tuple(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        if field is None:
            for r in rows:
                for x in r:
                    field = x.field
                    break
                if field is not None:
                    break
        if field is None:
            raise ValueError("cannot infer the field of an empty matrix; pass field=")
        self.field = field
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, Poly) for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, DenseMatrix) and self.shape == other.shape and self.rows == other.rows

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(list(zip(*self.rows)) if self.nrows else [], self.field, ncols=self.nrows)

    def apply(self, vec) -> list:
        """Matrix-vector product ``self @ vec``."""
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        out = []
        for r in self.rows:
            acc = self.field.zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def stack(self, other: "DenseMatrix") -> "DenseMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return DenseMatrix(self.rows + other.rows, self.field, ncols=self.ncols)

    def to_csv(self, var: str = "x") -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in self.rows:
            w.writerow([x.to_str(var) if isinstance(x, Poly) else str(x) for x in r])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, field, nvars: int | None = None, var: str = "x") -> "DenseMatrix":
        """Read a matrix written by :meth:`to_csv`; ``nvars`` switches to polynomial entries."""
        rows = []
        for rec in csv.reader(io.StringIO(text)):
            if not rec:
                continue
            if nvars is None:
                rows.append([field.parse(s) for s in rec])
            else:
                rows.append([Poly.parse(s, nvars, field, var) for s in rec])
        return cls(rows, field)

    def __repr__(self):
        return f"DenseMatrix({self.nrows}x{self.ncols} over {self.field})"


def identity(k: int, field) -> DenseMatrix:
    return DenseMatrix([[field.one if i == j else field.zero for j in range(k)] for i in range(k)], field)


# ---------------------------------------------------------------------------
# F_p kernel
# ---------------------------------------------------------------------------


def _mod_array(m: DenseMatrix) -> np.ndarray:
    a = np.zeros((m.nrows, m.ncols), dtype=np.int64)
    for i, r in enumerate(m.rows):
        for j, x in enumerate(r):
            if x.value:
                a[i, j] = x.value
    return a


def rref_mod(a: np.ndarray, p: int, full: bool = True) -> tuple[np.ndarray, list[int]]:
    """Row reduce an int64 array modulo ``p`` in place; returns (array, pivot columns).

    With ``full=False`` only the rows below each pivot are cleared, which is
    enough for the rank.
    """
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        targets = np.arange(r + 1, rows) if not full else np.r_[np.arange(0, r), np.arange(r + 1, rows)]
        if targets.size:
            f = a[targets, c]
            hit = targets[f != 0]
            if hit.size:
                a[np.ix_(hit, np.arange(c, cols))] = (
                    a[np.ix_(hit, np.arange(c, cols))] - np.outer(a[hit, c], a[r, c:]) % p
                ) % p
        pivots.append(c)
        r += 1
    return a, pivots


# ---------------------------------------------------------------------------
# Q(zeta_n) kernel
# ---------------------------------------------------------------------------


def _cyc_tensor(m: DenseMatrix) -> np.ndarray:
    phi = m.field.phi
    t = np.zeros((m.nrows, m.ncols, phi), dtype=object)
    t[...] = 0
    for i, r in enumerate(m.rows):
        den = 1
        for x in r:
            for c in x.coeffs:
                if c.denominator != 1:
                    den = lcm(den, c.denominator)
        for j, x in enumerate(r):
            if x:
                for k, c in enumerate(x.coeffs):
                    if c:
                        t[i, j, k] = c.numerator * (den // c.denominator)
    return t


def _content_reduce(block: np.ndarray) -> np.ndarray:
    flat = block.reshape(block.shape[0], -1)
    g = np.gcd.reduce(flat, axis=1) if flat.shape[1] else np.zeros(flat.shape[0], dtype=object)
    g = np.where(g == 0, 1, g)
    return (flat // g[:, None]).reshape(block.shape)


def rref_cyc(t: np.ndarray, field, full: bool = True) -> tuple[np.ndarray, list[int]]:
    """Division-free row reduction of an integer tensor over Q(zeta_n).

    Rows are only defined up to a nonzero scalar; pivot entries are left
    unnormalised.
    """
    rows, cols, phi = t.shape
    shifts = [np.array(field.mul_matrix([int(k == j) for j in range(phi)]), dtype=object) for k in range(phi)]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nzrows = np.flatnonzero(np.any(t[r:, c, :] != 0, axis=1))
        if nzrows.size == 0:
            continue
        piv = r + int(nzrows[0])
        if piv != r:
            t[[r, piv]] = t[[piv, r]]
        pc = [int(v) for v in t[r, c, :]]
        cand = np.arange(r + 1, rows) if not full else np.r_[np.arange(0, r), np.arange(r + 1, rows)]
        if cand.size:
            hit = cand[np.any(t[cand, c, :] != 0, axis=1)]
            if hit.size:
                # rows above the pivot carry earlier pivot entries, so the
                # scaling by the pivot must cover whole rows; rows below are
                # zero left of c
                lo = 0 if full else c
                block = t[hit, lo:, :]
                mp = np.array(field.mul_matrix(pc), dtype=object)
                scaled = block @ mp
                prow = t[r, lo:, :]
                # prow * f for each hit row: sum_k f_k * (prow * w^k)
                basis = np.stack([prow @ s for s in shifts])  # (phi, cols-lo, phi)
                fs = t[hit, c, :]  # (h, phi)
                sub = np.tensordot(fs, basis, axes=(1, 0))
                t[hit, lo:, :] = _content_reduce(scaled - sub)
        pivots.append(c)
        r += 1
    return t, pivots


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


@dataclass
class Echelon:
    """Reduced row echelon form with normalised pivots."""

    rows: list  # list of lists of scalars, one per pivot
    pivots: list[int]
    ncols: int
    field: object = dc_field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _require_scalar(m: DenseMatrix):
    if m.is_symbolic:
        raise TypeError("matrix has polynomial entries; use symbolic_rank")


def rank(m: DenseMatrix) -> int:
    _require_scalar(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.field.kind == MODULAR:
        return len(rref_mod(_mod_array(m), m.field.p, full=False)[1])
    if m.field.kind == CYCLOTOMIC:
        return len(rref_cyc(_cyc_tensor(m), m.field, full=False)[1])
    raise TypeError(f"unsupported field {m.field!r}")


def row_reduce(m: DenseMatrix) -> Echelon:
    _require_scalar(m)
    f = m.field
    if m.nrows == 0 or m.ncols == 0:
        return Echelon([], [], m.ncols, f)
    if f.kind == MODULAR:
        a, piv = rref_mod(_mod_array(m), f.p)
        rows = [[f(int(v)) for v in a[i]] for i in range(len(piv))]
        return Echelon(rows, piv, m.ncols, f)
    t, piv = rref_cyc(_cyc_tensor(m), f)
    rows = []
    for i, c in enumerate(piv):
        elems = [f(list(t[i, j, :])) if np.any(t[i, j, :] != 0) else f.zero for j in range(m.ncols)]
        inv = elems[c].inverse()
        rows.append([x * inv if x else x for x in elems])
    return Echelon(rows, piv, m.ncols, f)


def kernel_basis(m: DenseMatrix) -> list[list]:
    """Basis of the right kernel, one vector per non-pivot column."""
    ech = row_reduce(m)
    f = m.field
    pivset = set(ech.pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for row, pc in zip(ech.rows, ech.pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def rank_multi_prime(build, primes) -> dict[int, int]:
    """Rank of ``build(p)`` for each prime; ``build`` returns a DenseMatrix over F_p."""
    return {p: rank(build(p)) for p in primes}


def to_field(m: DenseMatrix, field) -> DenseMatrix:
    """Re-coerce integer/rational entries of ``m`` into another field."""
    from .field import lift

    return DenseMatrix([[lift(field, x) for x in r] for r in m.rows], field, ncols=m.ncols)


def integer_matrix(rows, field) -> DenseMatrix:
    return DenseMatrix([[field(int(x)) if not isinstance(x, Fraction) else field(x) for x in r] for r in rows], field)


# ---------------------------------------------------------------------------
# polynomial matrices
# ---------------------------------------------------------------------------


@dataclass
class SymbolicRank:
    rank: int
    pivots: list  # pivot polynomials; the rank holds wherever none of them vanish
    pivot_columns: list[int]


def symbolic_rank(m, certificate: bool = False):
    """Rank over the fraction field of the polynomial ring, by Bareiss elimination.

    Entries may be polynomials or scalars.  With ``certificate=True`` a
    :class:`SymbolicRank` is returned whose ``pivots`` are the successive
    Bareiss pivots: the specialised matrix has the same rank at every point
    where the last pivot does not vanish.
    """
    rows = [list(r) for r in (m.rows if isinstance(m, DenseMatrix) else m)]
    if not rows or not rows[0]:
        return SymbolicRank(0, [], []) if certificate else 0
    template = next((x for r in rows for x in r if isinstance(x, Poly)), None)
    if template is not None:
        rows = [[x if isinstance(x, Poly) else Poly.constant(x, template.nvars, template.field) for x in r] for r in rows]
    nrows, ncols = len(rows), len(rows[0])
    prev = None
    pivots, pcols = [], []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            new = []
            for j in range(c + 1, ncols):
                v = p * rows[i][j] - a * rows[r][j]
                if prev is not None and v:
                    v = v.exact_div(prev) if isinstance(v, Poly) else v / prev
                new.append(v)
            zero = rows[i][c] * 0
            rows[i] = rows[i][:c] + [zero] + new
        pivots.append(p)
        pcols.append(c)
        prev = p
        r += 1
    if certificate:
        return SymbolicRank(r, pivots, pcols)
    return r


def specialize(m: DenseMatrix, point) -> DenseMatrix:
    """Evaluate every polynomial entry at ``point``."""
    f = m.field
    return DenseMatrix([[x.evaluate(point) if isinstance(x, Poly) else f(x) for x in r] for r in m.rows], f, ncols=m.ncols)
