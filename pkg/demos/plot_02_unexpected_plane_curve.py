"""
An unexpected plane curve
=========================

Quintics through the twelve points of W_{2,3} form a 9-dimensional space.
A quadruple point asks for 10 more conditions, yet a curve survives.
"""

import numpy as np

from fatpoints import build_configuration
from fatpoints.constructions import curve_QP
from fatpoints.interpolation import sample_general_points, unexpectedness_report

cfg = build_configuration(2, 3)
rep = unexpectedness_report(cfg, degree=5, mults=[4], trials=3, seed=0)
print(f"base {rep.base_dim}, conditions {rep.conditions_expected}, expected {rep.expected_dim}, actual {rep.actual_dim}")
print("unexpected:", rep.verdict)

# The surviving curve has a closed form; check it at a random point
(R,) = sample_general_points(cfg, 1, np.random.default_rng(1))
res = curve_QP(3, R)
print("curve:", res.poly)
print("multiplicity at R:", res.measured_multiplicities[0], "| base points hit:", res.base_vanishing)

# The same happens for every n >= 3 in degree n + 2
for n in (4, 5):
    rep = unexpectedness_report(build_configuration(2, n), n + 2, [4], trials=2, seed=0)
    print(f"n={n}: actual {rep.actual_dim} vs expected {rep.expected_dim} -> {rep.verdict}")
