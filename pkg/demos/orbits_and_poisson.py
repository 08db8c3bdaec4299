"""Coadjoint orbits, leaves and the Lie-Poisson bracket on so(3)*."""

import numpy as np

from liethermo import lie, orbits

x = 2.0
print("SO(2) orbit spread of x*u:", orbits.orbit_sample(x * lie.U, "SO2").max_spread)
print("O(3) stabilizer orbit spread of x*Z3:", orbits.orbit_sample(x * lie.Z3, "O3").max_spread)
print("full SO(3) orbit spread of x*Z3:", orbits.orbit_sample(x * lie.Z3, "SO3").max_spread)

# J = diag(1,1,-1) fixes the Z3 pattern; the other coordinate reflections flip it.
for g in lie.reflection_elements():
    print(np.diag(g.matrix), "->\n", lie.coadjoint_group(g, x * lie.Z3))

for xi, group in ((3 * lie.U, "SO2"), (-lie.U, "SO2"), (lie.E1, "SO2"), (2 * lie.Z3, "O3")):
    print("leaf membership:", orbits.leaf_membership(xi, group))

print("\nKKS form <Z3, [Z1, Z2]> =", orbits.kks_form(lie.Z3, lie.Z1, lie.Z2))

so3 = lie.builtin_algebra("so3")
ev = orbits.PoissonEvaluator(so3)
F, G = orbits.LinearFunctional(lie.Z1), orbits.LinearFunctional(lie.Z2)
X = so3.element([0.3, -0.4, 1.2])
print("{<.,Z1>, <.,Z2>}(X) =", ev(F, G, X), " <X, Z3> =", 1.2)

res = orbits.bracket_property_residuals(so3, 100, seed=0)
print("bracket residuals over 100 random points:", {k: f"{v:.1e}" for k, v in res.items()})
