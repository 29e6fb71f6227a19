"""
Counting conditions in odd dimensions
=====================================

In P^{2k+1}, quartics in the ideal of W_{2k+1,3} with a general triple
point form a space of dimension C(2k, 2). Each further general double
point imposes 2k+2 conditions, except the last, which imposes only k+3.
"""

from fatpoints.interpolation import conditions_count_sweep, triple_point_dimension

for N in (3, 5, 7):
    print(f"N={N}:", triple_point_dimension(N, trials=2))

for row in conditions_count_sweep([2, 3], trials=3, seed=0):
    print(
        f"k={row.k}: dims {row.dims}, increments {row.increments} "
        f"(expected {row.expected_increments}), total {row.total_conditions}"
    )
