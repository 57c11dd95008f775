"""Fixed sublattices, eigenvalue characters, and ramification classification.

All computations run on exact eigen-data of finite-order integral
isometries: the candidate period plane of g lives on the saturated kernel
of the cyclotomic value Phi_m(g) for the unique m whose isotypic subspace
carries positive index 2.  The classification depends only on the order
r_tau of the character image, never on a choice of primitive root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la
from .errors import (
    FixedVectorPresent,
    NoPositiveEigenplane,
    NotRootOfUnity,
)
from .qform import QuadraticLattice

INTERIOR_UNRAMIFIED = "interior_unramified"
HEEGNER_REFLECTION = "heegner_reflection_type"
MINUS_IDENTITY = "minus_identity"
SPECIAL_CYCLE = "special_cycle"


@dataclass(frozen=True)
class IsometryElement:
    mat: tuple
    order: int | None = None

    @staticmethod
    def make(mat, lattice: QuadraticLattice, order_cap: int = 120) -> "IsometryElement":
        m = la.mat(mat)
        G = lattice.gram
        if not la.mat_eq(la.mat_mul(la.mat_mul(la.transpose(m), G), m), G):
            raise ValueError("matrix does not preserve the Gram matrix")
        return IsometryElement(mat=m, order=matrix_order(m, order_cap))


def matrix_order(m, cap: int = 120):
    ident = la.identity(len(m))
    p = m
    for k in range(1, cap + 1):
        if la.mat_eq(p, ident):
            return k
        p = la.mat_mul(p, m)
    return None


def enumerate_isometries(L: QuadraticLattice, bound: int):
    """All integral isometries with entries bounded by bound.

    Column-by-column backtracking with partial Gram checks; always contains
    +/- identity.  Desk scale: rank <= 6, bound small.
    """
    m = L.rank
    G = L.gram
    cols_domain = list(itertools.product(range(-bound, bound + 1), repeat=m))
    out = []

    def extend(cols):
        j = len(cols)
        if j == m:
            out.append(tuple(zip(*cols)))
            return
        for cand in cols_domain:
            if L.quadratic(cand) != G[j][j]:
                continue
            ok = True
            for i, prev in enumerate(cols):
                if L.bilinear(prev, cand) != G[i][j]:
                    ok = False
                    break
            if ok:
                extend(cols + [cand])

    extend([])
    return [IsometryElement(mat=la.mat(g), order=matrix_order(la.mat(g)))
            for g in sorted(out)]


def _cyclotomic_coeffs(n: int):
    """Integer coefficients of the n-th cyclotomic polynomial."""
    # Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}: compute by polynomial division
    poly = [1]

    def poly_mul_xk_minus_1(p, k):
        out = [0] * (len(p) + k)
        for i, c in enumerate(p):
            out[i + k] += c
            out[i] -= c
        return out

    def poly_div_xk_minus_1(p, k):
        # exact division by x^k - 1
        out = [0] * (len(p) - k)
        rem = list(p)
        for i in range(len(p) - k - 1 + 1)[::-1]:
            c = rem[i + k]
            out[i] = c
            rem[i + k] -= c
            rem[i] += c
        assert all(x == 0 for x in rem), "division not exact"
        return out

    def mobius(n):
        out = 1
        d = 2
        while d * d <= n:
            if n % d == 0:
                n //= d
                if n % d == 0:
                    return 0
                out = -out
            d += 1
        if n > 1:
            out = -out
        return out

    mults = []
    divs = []
    for d in range(1, n + 1):
        if n % d == 0:
            mu = mobius(n // d)
            if mu == 1:
                mults.append(d)
            elif mu == -1:
                divs.append(d)
    for d in mults:
        poly = poly_mul_xk_minus_1(poly, d)
    for d in divs:
        poly = poly_div_xk_minus_1(poly, d)
    return poly


def euler_phi(n: int) -> int:
    out = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


def _matrix_poly(coeffs, g):
    m = len(g)
    out = la.zeros(m, m)
    p = la.identity(m)
    for c in coeffs:
        if c:
            out = la.mat_add(out, la.mat_scale(Fraction(c), p))
        p = la.mat_mul(p, g)
    return out


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _restricted_gram(L: QuadraticLattice, basis):
    return la.mat([[L.bilinear(a, b) for b in basis] for a in basis])


def _signature_of_block(B):
    if not B:
        return (0, 0)
    from .qform import QuadraticLattice as QL
    from .qform import signature as sig

    return sig(QL(B))


@dataclass(frozen=True)
class FixedLocusReport:
    """Fixed-plane data of a finite-order isometry."""

    s_basis: tuple
    s_perp_basis: tuple
    defining_equations: tuple  # rows b(z, y_j) = 0 cutting D_{L,S}
    r_tau: int | None = None
    lambda_exponent: int | None = None
    classification: str | None = None
    field_descriptor: str | None = None
    decomposition: "CyclotomicCertificate | None" = None
    notes: tuple = ()


def fixed_sublattice(g: IsometryElement, L: QuadraticLattice) -> FixedLocusReport:
    """S = saturated double-perp of the candidate eigenplane of g.

    Selects the unique cyclotomic factor Phi_m of g whose rational isotypic
    subspace has positive index 2; S is the saturation of ker Phi_m(g) in L
    and S^perp its orthogonal complement.
    """
    if g.order is None:
        raise NotRootOfUnity("isometry must have finite order")
    mat = la.mat(g.mat)
    chosen = None
    for m in _divisors(g.order):
        val = _matrix_poly(_cyclotomic_coeffs(m), mat)
        ker = la.kernel_int(val)
        if not ker:
            continue
        r, s = _signature_of_block(_restricted_gram(L, ker))
        if r == 2:
            if chosen is not None:
                raise NoPositiveEigenplane("positive plane is not unique")
            chosen = (m, ker)
    if chosen is None:
        raise NoPositiveEigenplane(
            "no cyclotomic factor carries a signature-(2,*) subspace"
        )
    m, s_basis = chosen
    perp = la.kernel_int([la.mat_vec(L.gram, v) for v in s_basis])
    eqs = tuple(tuple(la.mat_vec(L.gram, y)) for y in perp)
    return FixedLocusReport(
        s_basis=tuple(s_basis),
        s_perp_basis=tuple(perp),
        defining_equations=eqs,
        r_tau=m,
        lambda_exponent=_canonical_exponent(m),
    )


def _canonical_exponent(m: int) -> int:
    """Exponent k of the reported eigenvalue zeta_m^k (Im > 0 for m > 2)."""
    return 0 if m == 1 else (m // 2 if m == 2 else 1)


def double_perp(L: QuadraticLattice, vectors):
    """((span)^perp)^perp cap L as a saturated basis."""
    perp = la.kernel_int([la.mat_vec(L.gram, v) for v in vectors]) if vectors else \
        tuple(tuple(int(x) for x in row) for row in la.identity(L.rank))
    if not perp:
        return tuple(tuple(int(x) for x in row) for row in la.identity(L.rank))
    return la.kernel_int([la.mat_vec(L.gram, v) for v in perp])


def restriction_matrix(g_mat, basis):
    """Matrix of g on the saturated sublattice spanned by basis (integral)."""
    images = [la.mat_vec(g_mat, v) for v in basis]
    cols = []
    B = la.transpose(basis)
    for img in images:
        sol = la.solve(B, img)
        if sol is None:
            raise ValueError("sublattice is not stable under g")
        cols.append(sol)
    R = la.transpose(cols)
    if any(x.denominator != 1 for row in R for x in row):
        raise ValueError("restriction is not integral; basis not saturated?")
    return la.mat(R)


def chi_order_at(g: IsometryElement, L: QuadraticLattice):
    """(lambda as (exponent, order), r_tau) for the selected eigenplane.

    The kernel criterion lambda = 1 <=> g fixes S pointwise is part of the
    returned data (checked literally on the basis vectors).
    """
    report = fixed_sublattice(g, L)
    m = report.r_tau
    fixes_S = all(
        tuple(la.mat_vec(g.mat, v)) == tuple(map(Fraction, v)) for v in report.s_basis
    )
    if (m == 1) != fixes_S:
        raise AssertionError("kernel criterion violated: lambda=1 iff g|_S = id")
    return (report.lambda_exponent, m), m


@dataclass(frozen=True)
class CyclotomicCertificate:
    """S tensor Q decomposed as d orthogonal q-nondegenerate Phi_m factors."""

    m: int
    d: int
    rank: int
    factor_bases: tuple
    nondegenerate: bool
    orthogonal: bool
    repaired_pairs: int

    @property
    def verified(self) -> bool:
        return (self.nondegenerate and self.orthogonal
                and self.d * euler_phi(self.m) == self.rank)


def cyclotomic_decomposition(g: IsometryElement, L: QuadraticLattice,
                             s_basis=None) -> CyclotomicCertificate:
    """Certificate that S decomposes into q-nondegenerate cyclic factors.

    Requires the mu_{r_tau}-action on S to have no nonzero fixed vectors
    (FixedVectorPresent otherwise).  When a cyclic factor is q-trivial it
    is repaired by the paired-factor substitution y = x^(1) + x^(2).
    """
    if s_basis is None:
        report = fixed_sublattice(g, L)
        s_basis = report.s_basis
        m = report.r_tau
    else:
        m = None
    R = restriction_matrix(g.mat, s_basis)
    k = len(s_basis)
    if m is None:
        m = matrix_order(R)
    if m is None:
        raise NotRootOfUnity("restriction has infinite order")
    if m > 1:
        fixed = la.nullspace(la.mat_add(R, la.mat_scale(Fraction(-1), la.identity(k))))
        if fixed:
            raise FixedVectorPresent("action on S has nonzero fixed vectors")
    phi = euler_phi(m)
    gram_S = _restricted_gram(L, s_basis)

    def pair(x, y):
        return la.dot(la.mat_vec(gram_S, x), y)

    def cyclic_span(v):
        vecs = [la.vec(v)]
        for _ in range(phi - 1):
            vecs.append(la.mat_vec(R, vecs[-1]))
        return vecs

    factors = []
    repaired = 0
    space_eqs = []  # rows: pairing functionals of the factors found so far

    def complement_basis():
        if not space_eqs:
            return [la.vec(row) for row in la.identity(k)]
        return [la.vec(v) for v in la.nullspace(space_eqs)]

    while True:
        # pick a vector in the orthogonal complement of the found factors
        cands = [v for v in complement_basis() if any(v)]
        if not cands:
            break
        v = cands[0]
        W = cyclic_span(v)
        GW = [[pair(a, b) for b in W] for a in W]
        if la.determinant(GW) == 0:
            mate = next((u for u in cands[1:]
                         if any(pair(w, u) != 0 for w in W)), None)
            if mate is None:
                raise FixedVectorPresent("cannot repair a q-trivial factor")
            v = la.vec_add(v, mate)
            W = cyclic_span(v)
            GW = [[pair(a, b) for b in W] for a in W]
            if la.determinant(GW) == 0:
                raise FixedVectorPresent("repair step failed to fix degeneracy")
            repaired += 1
        factors.append(tuple(W))
        for w in W:
            space_eqs.append(la.mat_vec(gram_S, w))
        if len(factors) * phi >= k:
            break
    ortho = all(
        pair(a, b) == 0
        for f1, f2 in itertools.combinations(factors, 2)
        for a in f1
        for b in f2
    )
    nondeg = all(la.determinant([[pair(a, b) for b in f] for a in f]) != 0
                 for f in factors)
    return CyclotomicCertificate(
        m=m,
        d=len(factors),
        rank=k,
        factor_bases=tuple(factors),
        nondegenerate=nondeg,
        orthogonal=ortho,
        repaired_pairs=repaired,
    )


def classify_ramification(g: IsometryElement, L: QuadraticLattice) -> FixedLocusReport:
    """Full classification of the ramification type of a finite-order isometry."""
    report = fixed_sublattice(g, L)
    m = report.r_tau
    notes = []
    decomposition = None
    field = None
    if m == 1:
        cls = INTERIOR_UNRAMIFIED if not report.s_perp_basis else HEEGNER_REFLECTION
        if cls == HEEGNER_REFLECTION:
            notes.append(
                f"codimension-{len(report.s_perp_basis)} cycle driven by the "
                "pointwise-fixing group of S-perp"
            )
    elif m == 2:
        cls = MINUS_IDENTITY
        notes.append("acts trivially on the cycle; quotient effect equals -g on S-perp")
    else:
        cls = SPECIAL_CYCLE
        field = f"Q(zeta_{m})"
        decomposition = cyclotomic_decomposition(g, L, s_basis=report.s_basis)
        notes.append(f"CM field {field}; certificate d*phi(m) = "
                     f"{decomposition.d}*{euler_phi(m)} = {decomposition.rank}")
    return FixedLocusReport(
        s_basis=report.s_basis,
        s_perp_basis=report.s_perp_basis,
        defining_equations=report.defining_equations,
        r_tau=m,
        lambda_exponent=report.lambda_exponent,
        classification=cls,
        field_descriptor=field,
        decomposition=decomposition,
        notes=tuple(notes),
    )


def stabilizer_orders(L: QuadraticLattice, s_basis, isometries):
    """Desk-scale orders of Gamma_S, Gamma-bar_S, Gamma-tilde_S in a pool."""
    span = [la.vec(v) for v in s_basis]
    gamma_s = []
    for g in isometries:
        if all(la.in_span(la.mat_vec(g.mat, v), span) for v in span):
            gamma_s.append(g)
    restrictions = set()
    tilde = 0
    perp = la.kernel_int([la.mat_vec(L.gram, v) for v in s_basis]) if s_basis else ()
    for g in gamma_s:
        R = restriction_matrix(g.mat, s_basis) if s_basis else ()
        restrictions.add(R)
        if all(tuple(la.mat_vec(g.mat, v)) == tuple(map(Fraction, v)) for v in perp):
            tilde += 1
    return {
        "gamma_S": len(gamma_s),
        "gamma_bar_S": len(restrictions),
        "gamma_tilde_S": tilde,
    }


def gamma_canonical(alphas) -> bool:
    """Sum of fractional parts of the eigenvalue angles is at least 1."""
    total = Fraction(0)
    for a in alphas:
        a = la.frac(a)
        total += a - (a.numerator // a.denominator)
    return total >= 1
