"""Thermodynamics on the rotation cone of so(2).

beta = a*u with a > 0 plays the role of a (geometric) temperature.  The
density on the dual ray is p(x) = 2a exp(-2ax); everything else follows from
its normalizer.
"""

from liethermo import lie, thermo
from liethermo.thermo import ConeElement

print("a      chi(quad)    chi=1/2a     Phi=log 2a   Psi=1-log 2a  Legendre")
for a in (0.5, 1.0, 2.0, 5.0):
    beta = ConeElement(a)
    pot = thermo.potentials(beta)
    chi_q = thermo.koszul_chi(beta, "quadrature")
    print(f"{a:<6} {chi_q:.10f} {pot.chi:.10f} {pot.phi:+.9f} {pot.psi:+.9f}  {pot.legendre_residual:.1e}")

# The heat eta is the gradient of Phi: beta / <beta, beta> = u / a.
beta = ConeElement(2.0)
print("\neta at a=2:\n", thermo.potentials(beta).eta)

# Three routes to the Fisher information 1/a^2.
for a in (0.5, 1.0, 2.0):
    routes = [thermo.scalar_fisher(a, m) for m in ("closed_form", "finite_difference", "statistical")]
    print(f"I({a}) = " + "  ".join(f"{r:.10f}" for r in routes))

# The mean of the density sits at 1/(2a).  Which eta convention does it match?
mom = thermo.density_moments(ConeElement(1.0))
print(f"\nE[x] = {mom.mean_x:.12f}, Var[x] = {mom.var_x:.12f}")
for label, coord in mom.eta_coordinates.items():
    print(f"  {label:20s} eta coordinate {coord:+.4f}  match={mom.identification[label]}")

# Equivariance: rotating beta and co-rotating eta commute on SO(2) ...
print("\nSO(2) cocycle residual:", thermo.group_cocycle_residual(beta, thermo.GRAD_PHI, lie.so2_sweep()))
# ... and on so(3) for the subgroup that fixes the Z3 direction, but not for all of SO(3).
b3 = ConeElement(2.0, "so3")
print("O(3) stabilizer residual:", thermo.group_cocycle_residual(b3, thermo.GRAD_PHI, lie.o3_stabilizer_sweep()))
print("full SO(3) sweep residual:", thermo.group_cocycle_residual(b3, thermo.GRAD_PHI, lie.so3_sweep()))

# The cocycle X -> -X^{-1} is nonlinear; its bilinear 2-form uses the linear
# extension from the basis, which here vanishes identically.
tc = thermo.TwoCocycle(thermo.NEG_INVERSE)
sl2 = lie.builtin_algebra("sl2", exact=True)
print("\nraw <Theta e1, e1> =", tc.raw(sl2.basis[1], sl2.basis[1]), " antisymmetrized:", tc(sl2.basis[1], sl2.basis[1]))
print("cocycle identity residual:", thermo.cocycle_identity_residual(tc, sl2.basis))
