"""The formal Chern/Todd/Riemann-Roch engine.

Todd coefficients, Euler characteristics of line bundles on projective
spaces, the universal chi-polynomial, and the boundary error term.
"""

from fractions import Fraction as F

from orthocusp.chern import (
    GradedClass,
    error_term_symbolic,
    hrr_chi,
    line_bundle_ch,
    monomial_delta_degree,
    projective_space_setup,
    todd_from_chern,
    universal_Q,
)

n = 4
degs = {f"c{i}": i for i in range(1, n + 1)}
cs = [GradedClass.gen(f"c{i}", i, degs, n) for i in range(1, n + 1)]
td = todd_from_chern(cs, n)
print("Todd class through degree 4:")
for k in range(0, 5):
    part = td.graded_part(k)
    print(f"  deg {k}:", {("*".join(f"{g}^{e}" if e > 1 else g for g, e in m) or "1"):
                          str(c) for m, c in part.terms})

print()
print("chi(P^2, O(d)) from Hirzebruch-Riemann-Roch:")
h, tdP, deg = projective_space_setup(2)
for d in (-3, -1, 0, 1, 2, 3):
    print(f"  d = {d:+d}: chi = {hrr_chi(line_bundle_ch(d, h), tdP, deg)}")

print()
q = universal_Q(2, 1)
print("universal polynomial, dim 2, rank 1 (partition-pair table):")
for (beta, alpha), coeff in q.table:
    print(f"  c^{list(beta)}(E) * c^{list(alpha)}(Omega^1): {coeff}")
print("evaluating on P^2 data (c(Omega) = (-3h, 3h^2), deg h^2 = 1), d = 5:",
      q.evaluate({1: F(5)}, {1: F(-3), 2: F(3)}))

print()
print("boundary error term for dimension 3, boundary dimension 1:")
terms = error_term_symbolic(3, 1)
for i, cls in sorted(terms.items()):
    pretty = {("*".join(f"{g}^{e}" if e > 1 else g for g, e in m)): str(c)
              for m, c in cls.terms}
    print(f"  ell^{i}:", pretty)
all_delta = all(monomial_delta_degree(m) > 0
                for cls in terms.values() for m, _ in cls.terms)
print("every monomial is supported on the boundary (has a Delta factor):",
      all_delta)
