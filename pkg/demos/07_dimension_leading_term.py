"""The orthogonal dimension pipeline, up to its leading term.

Hilbert polynomial of the quadric compact dual, congruence-counted local
densities, the Gamma-product, and Vol_HM * P(ell - 1).  The boundary
correction E(ell) stays symbolic (see demo 06); every printed result
carries its convention flags.
"""

import math
from fractions import Fraction as F

from orthocusp.dimform import (
    alpha_inf_from_densities,
    hilbert_poly_dual,
    hm_volume,
    leading_dimension,
    local_density,
)
from orthocusp.qform import QuadraticLattice

print("Hilbert polynomials of the compact dual (note P(0) = 1):")
for n in range(1, 5):
    P = hilbert_poly_dual(n)
    print(f"  n = {n}: degree {P.degree}, P(0) = {P.evaluate(0)}, "
          f"coefficients {list(map(str, P.coeffs))}")

print()
one = QuadraticLattice([[1]])
print("local densities of the rank-1 lattice <1> by congruence counting:")
for p in (3, 5, 7):
    res = local_density(one, p)
    print(f"  alpha_{p} = {res.alpha_p} (counts {dict(res.counts)}, "
          f"stabilized at k = {res.k_stable})")

print()
L = QuadraticLattice([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
alpha = alpha_inf_from_densities([F(2)], spn_plus=1)
vol = hm_volume(L, alpha)
print("signature (2,1) lattice diag(1,1,-1):")
print(f"  alpha_inf (from one density, |spn+| = 1) = {alpha}")
print(f"  Vol_HM = {vol.rational_part} * pi^{vol.pi_power} * sqrt({vol.sqrt_arg})"
      f" = {vol.value:.12f}")
print(f"  (the n = 1 Gamma-product alone is 2 pi^2 = {2 * math.pi ** 2:.12f})")
print("  conventions:", *[f"\n    - {c}" for c in vol.conventions])

print()
print("leading term of dim S_ell (boundary error term omitted, symbolic):")
for ell in range(2, 7):
    out = leading_dimension(1, ell, vol)
    print(f"  ell = {ell}: Vol_HM * P({ell - 1}) = {out.value:+.6f} "
          f"(P({ell - 1}) = {out.hilbert_value})")

print()
from orthocusp.qform import standard_atilde

L22 = standard_atilde(2)  # two hyperbolic planes, signature (2,2), |D| = 1
vol22 = hm_volume(L22, 1)
print("signature (2,2) lattice (two hyperbolic planes, alpha_inf = 1):")
print(f"  Vol_HM = {vol22.rational_part} * pi^{vol22.pi_power} = {vol22.value:.6f}")
for ell in range(2, 7):
    out = leading_dimension(2, ell, vol22)
    print(f"  ell = {ell}: leading term {out.value:+.6f} "
          f"(P({ell - 1}) = {out.hilbert_value})")
