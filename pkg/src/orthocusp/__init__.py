"""orthocusp: exact computations around O(2,n) orthogonal symmetric domains.

Submodules:
    qform     quadratic lattices, Hilbert symbols, Hasse invariants
    domains   the projective / tube / bounded models and their conversions
    parab     parabolic, unipotent, cone and Levi data at the two cusp types
    fan       rational polyhedral cones, fans, toric charts and orbits
    corecone  kernels, cores, co-cores and support-hyperplane fans
    chern     formal Chern / Todd / Riemann-Roch calculus
    dimform   Hilbert polynomials, local densities, Hirzebruch-Mumford volume
    cycles    fixed sublattices and ramification classification
    cli       command-line front end
"""

__version__ = "0.1.0"
