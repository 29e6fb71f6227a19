"""Printed interpolation matrices for a triple point in P^3 and P^5.

Entries are polynomials in a0..aN (the coordinates of the triple point);
rows are the second partials in graded lex order, columns the generators
x_i[x_{i+1}, x_j] with j increasing inside each i.  Some rows were printed
after dividing out a common factor, so comparisons are up to a nonzero
scalar per row.
"""
from __future__ import annotations

from .field import CYCLOTOMIC, FieldSpec, make_field
from .linalg import DenseMatrix
from .poly import NotDivisible, Poly

TABLE_N3 = [
    ["0", "0", "-a1", "0", "-a2", "0", "a3", "a3"],
    ["a1^2", "a1^2", "-a0^2", "0", "0", "0", "0", "0"],
    ["a2^2", "0", "0", "0", "a0^2", "0", "0", "0"],
    ["0", "-a3^2", "0", "0", "0", "0", "a0^2", "a0^2"],
    ["a0", "a0", "0", "0", "0", "-a2", "-a3", "0"],
    ["0", "0", "a2^2", "a2^2", "0", "-a1^2", "0", "0"],
    ["0", "0", "0", "a3^2", "0", "0", "a1^2", "0"],
    ["-a0", "0", "a1", "a1", "0", "0", "0", "-a3"],
    ["0", "0", "0", "0", "a3^2", "a3^2", "0", "-a2^2"],
    ["0", "-a0", "0", "-a1", "a2", "a2", "0", "0"],
]

TABLE_N5 = [
    ["0", "0", "0", "0", "-a1", "0", "0", "0", "-a2", "0", "0", "0", "-a3", "0", "0", "0", "-a4", "0", "0", "0", "a5", "a5", "a5", "a5"],
    ["a1^2", "a1^2", "a1^2", "a1^2", "-a0^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["a2^2", "0", "0", "0", "0", "0", "0", "0", "a0^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "a3^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a0^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "a4^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a0^2", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "-a5^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a0^2", "a0^2", "a0^2", "a0^2"],
    ["a0", "a0", "a0", "a0", "0", "0", "0", "0", "0", "-a2", "0", "0", "0", "-a3", "0", "0", "0", "-a4", "0", "0", "-a5", "0", "0", "0"],
    ["0", "0", "0", "0", "a2^2", "a2^2", "a2^2", "a2^2", "0", "-a1^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "a3^2", "0", "0", "0", "0", "0", "0", "0", "a1^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "a4^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a1^2", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "a5^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a1^2", "0", "0", "0"],
    ["-a0", "0", "0", "0", "a1", "a1", "a1", "a1", "0", "0", "0", "0", "0", "0", "-a3", "0", "0", "0", "-a4", "0", "0", "-a5", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "a3^2", "a3^2", "a3^2", "a3^2", "0", "0", "-a2^2", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a4^2", "0", "0", "0", "0", "0", "0", "0", "a2^2", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a5^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a2^2", "0", "0"],
    ["0", "-a0", "0", "0", "0", "-a1", "0", "0", "a2", "a2", "a2", "a2", "0", "0", "0", "0", "0", "0", "0", "-a4", "0", "0", "-a5", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a4^2", "a4^2", "a4^2", "a4^2", "0", "0", "0", "-a3^2", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a5^2", "0", "0", "0", "0", "0", "0", "a3^2", "0"],
    ["0", "0", "-a0", "0", "0", "0", "-a1", "0", "0", "0", "-a2", "0", "a3", "a3", "a3", "a3", "0", "0", "0", "0", "0", "0", "0", "-a5"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "a5^2", "a5^2", "a5^2", "a5^2", "0", "0", "0", "-a4^2"],
    ["0", "0", "0", "-a0", "0", "0", "0", "-a1", "0", "0", "0", "-a2", "0", "0", "0", "-a3", "a4", "a4", "a4", "a4", "0", "0", "0", "0"],
]


def reference_table(N: int, field=None) -> DenseMatrix:
    rows = {3: TABLE_N3, 5: TABLE_N5}[N]
    field = field if field is not None else make_field(FieldSpec(CYCLOTOMIC, 3))
    return DenseMatrix([[Poly.parse(e, N + 1, field, var="a") for e in r] for r in rows], field)


def row_ratio(computed, expected):
    """Scalar c with expected = c * computed entrywise, or None."""
    k = next((j for j, x in enumerate(computed) if x), None)
    if k is None:
        return None if any(expected) else 1
    try:
        q = expected[k].exact_div(computed[k])
    except NotDivisible:
        return None
    if q.degree() != 0:
        return None
    c = q.coefficient((0,) * q.nvars)
    if all(e == x * c for x, e in zip(computed, expected)):
        return c
    return None


def compare_tables(computed: DenseMatrix, expected: DenseMatrix) -> list[int]:
    """Indices of rows that do not agree up to a scalar factor (empty when equal)."""
    if computed.shape != expected.shape:
        return list(range(max(computed.nrows, expected.nrows)))
    return [i for i, (r, e) in enumerate(zip(computed.rows, expected.rows)) if row_ratio(r, e) is None]
