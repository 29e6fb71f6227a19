"""
Fermat-type configurations
==========================

Build W_{N,n}, the n**N points whose coordinates are n-th roots of unity
plus the coordinate points, and check which forms vanish on it.
"""

from fatpoints import GeneratorKind, build_configuration, generators, verify_vanishing

# The twelve points of the dual Hesse configuration in the plane
cfg = build_configuration(2, 3)
print(len(cfg), "points over", cfg.field)
for p in cfg.points[:4]:
    print("  ", p)

# Three cubic-bracket generators cut it out in the plane
gens = generators(GeneratorKind.FERMAT_P2, 2, 3)
for g in gens:
    print("  ", g)
print("vanish on W_{2,3}:", verify_vanishing(gens, cfg).ok)

# The complete intersection x_i^3 - x_{i+1}^3 misses the coordinate points
ci = generators("ci", 2, 3)
check = verify_vanishing(ci, cfg)
print("complete intersection vanishes everywhere:", check.ok, "first miss at", check.witness[1])

# In P^5 there are 3**5 + 6 = 249 points and 24 quartic generators x_i[x_{i+1}, x_j]
cfg5 = build_configuration(5, 3)
gens5 = generators("pn", 5, 3)
print(len(cfg5), "points,", len(gens5), "generators, all vanishing:", verify_vanishing(gens5, cfg5).ok)
