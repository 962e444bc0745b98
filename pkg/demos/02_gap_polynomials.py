#!/usr/bin/env python3
"""Gap polynomials R_g and their Faber-type leading parts.

Substituting the jets of log x (z_j -> (-1)^(j-1) (j-1)!) into H_g strips
the x-power off every monomial at once, so R_g comes out exactly.  Its
top-degree part is pinned by Bernoulli data.
"""
from cubichodge import LoopSolver, faber_leading, h1_gap_check, r_poly
from cubichodge.textform import sigma_text

energies = LoopSolver(4).compute(4)

print("genus-1 single log term: coefficient (s1 - 1)/24 ->",
      "confirmed" if h1_gap_check(energies[0]) else "BROKEN")
print()

for g in (2, 3, 4):
    rg = r_poly(energies[g - 1])
    top = rg.homogeneous_part(3 * g - 3)
    print(f"R_{g} (degree {rg.degree()} <= {3 * g - 3}):")
    print("   ", sigma_text(rg))
    assert top == faber_leading(g)
    print(f"    top part equals the Bernoulli closed form: {sigma_text(top)}")
    print()
