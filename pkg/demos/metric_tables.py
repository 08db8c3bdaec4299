"""Generalized Fisher metric: which conventions reproduce the published tables?

The metric entry g_ij = c(Z_i, [beta, Z_j]) + <eta, [Z_i, [beta, Z_j]]>
depends on the pairing scale (1/2 or 1 times the trace form) and on how eta
is attached to beta.  All six combinations are evaluated in exact rational
arithmetic at a = 1/2, 1, 2.
"""

from liethermo import fisher, lie, linalg

for target in fisher.PUBLISHED_TABLES:
    best, rep = fisher.reproduce_paper_tables(target)
    print(f"== {target}: best convention {best.label}")
    for label, dev in rep.sweep.items():
        print(f"   {label:11s} max deviation {dev:g}")
    print("   matrix at a=2 under the best convention:")
    for row in rep.matrices[-1]:
        print("     ", [str(v) for v in row])
    fits = {k: v for k, v in rep.monomial_fit.items() if v and v[1] is not None}
    print("   monomial fits c*a^k:", {f"{rep.basis_labels[i]},{rep.basis_labels[j]}": v for (i, j), v in fits.items()})

# sl(2) wants eta = -beta, so(3) wants eta = +beta under the full trace: no
# single convention serves both.  Under one/minus the so(3) table is right up to sign.
flipped = fisher.table_report("thm62", fisher.convention_from_labels("one", "minus"))
print("\nso(3) under one/minus: |values| deviation", flipped.abs_deviation,
      "sign mismatches", len(flipped.sign_mismatches))

# The bracket behind the so(3) entries, straight from the matrices.
print("[Z3, Z2] =\n", linalg.commutator(lie.Z3, lie.Z2), "\n= -Z1")
