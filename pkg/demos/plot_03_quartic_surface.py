"""
A quartic surface with a triple point
=====================================

W_{3,3} has 31 points. Quartics through them are spanned by eight
generators, and one combination of them is triple at any general point.
"""

from fatpoints import symbolic_rank
from fatpoints.constructions import qr_derivative_identities, quartic_QR
from fatpoints.interpolation import symbolic_interpolation_matrix
from fatpoints.tables import compare_tables, reference_table

res = quartic_QR([1, 2, 3, 5])
print(res.poly)
print("triple:", res.measured_multiplicities == [3], "| base:", res.base_vanishing)

# The partials can be checked with the point kept symbolic
for name, ok in qr_derivative_identities().items():
    print(f"  {name}: {'holds' if ok else 'fails'}")

# Second partials of the generators at (a0 : a1 : a2 : a3), one row per partial
m = symbolic_interpolation_matrix(3)
print(m.to_csv(var="a"))
print("matches the reference table:", compare_tables(m, reference_table(3)) == [])
print("generic rank:", symbolic_rank(m), "of", m.ncols, "columns, so exactly one quartic survives")
