"""Classifying ramification from finite-order isometries.

Enumerates small isometry groups, computes fixed sublattices and
eigenvalue characters, and classifies each element.
"""

from fractions import Fraction as F

from orthocusp import _linalg as la
from orthocusp.cycles import (
    IsometryElement,
    classify_ramification,
    cyclotomic_decomposition,
    enumerate_isometries,
    gamma_canonical,
    stabilizer_orders,
)
from orthocusp.qform import QuadraticLattice

A2 = QuadraticLattice([[2, 1], [1, 2]])
print("isometries of the hexagonal lattice A2 (expect 12):",
      len(enumerate_isometries(A2, 1)))
print("isometries of diag(1,1) (expect 8):",
      len(enumerate_isometries(QuadraticLattice([[1, 0], [0, 1]]), 1)))

print()
SIG21 = QuadraticLattice([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
SIG22 = QuadraticLattice([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
examples = [
    ("identity", IsometryElement.make(la.identity(3), SIG21), SIG21),
    ("-identity", IsometryElement.make(la.mat_scale(F(-1), la.identity(3)), SIG21), SIG21),
    ("corank-1 reflection", IsometryElement.make([[1, 0, 0], [0, 1, 0], [0, 0, -1]],
                                                 SIG21), SIG21),
    ("order-4 J+J", IsometryElement.make(((0, -1, 0, 0), (1, 0, 0, 0),
                                          (0, 0, 0, -1), (0, 0, 1, 0)), SIG22), SIG22),
]
for name, g, L in examples:
    rep = classify_ramification(g, L)
    extra = f", field {rep.field_descriptor}" if rep.field_descriptor else ""
    print(f"  {name:20} -> {rep.classification} (r_tau = {rep.r_tau}, "
          f"rank S = {len(rep.s_basis)}, rank S-perp = {len(rep.s_perp_basis)}{extra})")

print()
jj = examples[3][1]
cert = cyclotomic_decomposition(jj, SIG22)
print(f"cyclotomic certificate for J+J: S = phi_{cert.m}^{cert.d}, "
      f"d * phi({cert.m}) = {cert.d} * 2 = {cert.rank} = rank S; verified:",
      cert.verified)

print()
print("stabilizer orders at desk scale for the reflection's fixed plane:")
pool = enumerate_isometries(SIG21, 1)
from orthocusp.cycles import fixed_sublattice

rep = fixed_sublattice(examples[2][1], SIG21)
print(" ", stabilizer_orders(SIG21, rep.s_basis, pool))

print()
print("gamma-canonical test on eigenvalue angle lists:")
for angles in ([F(1, 2), F(1, 2)], [F(1, 4), F(1, 4)], [F(1, 3), F(2, 3)]):
    print(f"  {[str(a) for a in angles]} -> {gamma_canonical(angles)}")
