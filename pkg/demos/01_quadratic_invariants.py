"""Quadratic lattices and their local invariants, exactly.

Walks through diagonalization, discriminants, signatures, Hilbert symbols
and the product formula, and hyperbolic splits.
"""

from orthocusp import _linalg as la
from orthocusp.qform import (
    Place,
    QuadraticLattice,
    REAL_PLACE,
    diagonalize,
    discriminant,
    find_isotropic_split,
    hasse_invariant,
    hilbert_symbol,
    relevant_places,
    signature,
)

H = QuadraticLattice([[0, 1], [1, 0]])
print("hyperbolic plane H:", H)
print("  disc      =", discriminant(H))
print("  signature =", signature(H))
diag, T = diagonalize(H)
print("  diagonalized to", [str(d) for d in diag], "via T =", [list(map(str, r)) for r in T])
print("  T^t G T check:",
      la.mat_eq(la.mat_mul(la.mat_mul(la.transpose(T), H.gram), T),
                la.mat([[diag[0], 0], [0, diag[1]]])))

print()
print("Hilbert symbols (3, 5) across the relevant places:")
prod = 1
for v in relevant_places(3, 5):
    s = hilbert_symbol(3, 5, v)
    prod *= s
    print(f"  (3,5)_{'oo' if v.is_real else v.p} = {s:+d}")
print("  product =", prod, "(the product formula)")

print()
L = QuadraticLattice([[1, 0, 0], [0, 2, 1], [0, 1, -5]])
print("Hasse invariants of", L)
for p in (2, 3, 5, 7):
    print(f"  H_{p}(q) = {hasse_invariant(L, Place(p)):+d}")
print(f"  H_oo(q) = {hasse_invariant(L, REAL_PLACE):+d}")

print()
M = QuadraticLattice([[1, 0], [0, -1]])
split = find_isotropic_split(M, 2)
print("isotropic split of diag(1,-1):", split)
e1, e2 = split
print("  q(e1) =", M.quadratic(e1), " b(e1,e2) =", M.bilinear(e1, e2))
print("definite form diag(1,1,1) has no isotropic vectors up to height 10:",
      find_isotropic_split(QuadraticLattice(la.identity(3)), 10))
