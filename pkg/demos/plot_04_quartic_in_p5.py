"""
A quartic in P^5 with a triple and a double point
=================================================

The 24 generators of the quartics through W_{5,3} leave a 6-dimensional
system after a triple point. A double point imposes six conditions in
general, but here only five, so one quartic remains.
"""

import numpy as np

from fatpoints import build_configuration
from fatpoints.constructions import quartic_QRP
from fatpoints.interpolation import sample_general_points, unexpectedness_report

cfg = build_configuration(5, 3)
rep = unexpectedness_report(cfg, degree=4, mults=[3, 2], trials=3, seed=0)
print(f"base {rep.base_dim}, conditions {rep.conditions_expected}, virtual {rep.virtual_dim}")
print(f"conditions per point {rep.rank_per_point}, actual dimension {rep.actual_dim}")
print("unexpected:", rep.verdict)

# Build the quartic from six quartic cones and verify it directly
R, P = sample_general_points(cfg, 2, np.random.default_rng(3))
res = quartic_QRP(R, P)
print("multiplicities", res.measured_multiplicities, "| base", res.base_vanishing)
print(res.notes[-1])
