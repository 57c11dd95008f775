"""The three models of the O(2,n) domain and their exact conversions.

Projective (zero quadric), tube (q(Im y) > 0), and bounded coordinates,
with every identity checked in exact Gaussian-rational arithmetic.
"""

from fractions import Fraction as F

from orthocusp.domains import (
    BoundedPoint,
    circle_action_matrix,
    grass_of,
    in_bounded,
    in_kappa,
    psi,
    psi_bounded,
    standard_bounded_frame,
    tube_r,
    upsilon,
    upsilon_inv,
)
from orthocusp.gaussian import GaussianRational as GR
from orthocusp.gaussian import I

frame = standard_bounded_frame(3)  # signature (2,3), block -2
print("ambient Gram (two hyperbolic planes + block):")
for row in frame.lattice.gram:
    print("  ", [str(x) for x in row])

print()
print("the bounded-model base point z = 0:")
z0 = BoundedPoint((GR(0), GR(0), GR(0)), frame)
print("  Upsilon(0) =", [(str(c.re), str(c.im)) for c in upsilon(z0).coords],
      " (the tube base point (i, i, 0))")
print("  Psi(0)     =", [(str(c.re), str(c.im)) for c in psi_bounded(z0).coords],
      " (the projective base point [1:i:1:i:0])")
print("  in kappa:", in_kappa(psi_bounded(z0).coords, frame).value)

print()
z = BoundedPoint((GR(F(1, 8), F(1, 9)), GR(F(-1, 7)), GR(F(1, 5), F(1, 11))), frame)
print("a generic exact bounded point z:", [(str(c.re), str(c.im)) for c in z.coords])
print("  in bounded domain:", in_bounded(z.coords, frame))
y = upsilon(z)
print("  Upsilon(z) round trip exact:", upsilon_inv(y).coords == z.coords)
Q = frame.q_a_prime(z.coords)
s = 1 - 2 * z.coords[0] - F(1, 2) * Q
print("  r(Upsilon(z)) == 1 - 2 z1 - (1/2) z A' z^t:", tube_r(y) == s)
p1, p2 = psi(y), psi_bounded(z)
lam = p1.coords[2] / p2.coords[2]
print("  Psi(z) == psi(Upsilon(z)) up to scale:",
      all(a == lam * b for a, b in zip(p1.coords, p2.coords)))
print("  q(Psi(z)) == 0 exactly:", not frame.quadratic_c(p2.coords))

print()
print("the Grassmannian picture at the base point:")
P = grass_of(psi_bounded(z0))
print("  plane X =", [str(x) for x in P.x], " Y =", [str(y) for y in P.y])
print("  normalized (equal norms, orthogonal):", P.is_normalized)
M = circle_action_matrix(P, r=1, cos_sin_2theta=(F(3, 5), F(4, 5)))
m = len(P.x)
w = tuple(GR(x) - I * GR(y) for x, y in zip(P.x, P.y))
Mw = tuple(sum((GR(M[i][j]) * w[j] for j in range(m)), GR(0)) for i in range(m))
lam = GR(F(3, 5), F(4, 5))
print("  circle action: X - iY is the e^{2 i theta} eigenvector:",
      Mw == tuple(lam * c for c in w))
