"""Parabolic, unipotent, cone and Levi data at the two cusp types of O(2,n).

Everything is relative to a lattice in the two-hyperbolic-planes shape
(pairs (v0,v2) and (v1,v3) plus a negative-definite block A); the rank-1
flag is the isotropic line spanned by v0, the rank-2 flag the totally
isotropic plane span(v0, v1).  Dependent matrix entries are fixed by the
isometry condition g^t Atilde g = Atilde, which is unambiguous.

Chart convention: the rank-1 boundary chart tuple is ordered
(v3/v2, v1/v2, v4/v2, ...) so that it matches the centre's parameter
labels (y1, y3, y4): translation by the unipotent element with parameters
(y1, y3, y4) adds exactly (y1, y3, y4) to the complexified tuple, and the
Levi equivariance phi(g p) = rho_l(g) phi(p) holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from ._linalg import frac
from .errors import NotInParabolic, UnsupportedShape, WrongFlagKind
from .gaussian import im_part
from .qform import QuadraticLattice, atilde_block, is_atilde_shape

RANK1 = "rank1"
RANK2 = "rank2"


@dataclass(frozen=True)
class CuspFlag:
    kind: str
    lattice: QuadraticLattice

    @classmethod
    def from_lattice(cls, lattice: QuadraticLattice, kind: str) -> "CuspFlag":
        if kind not in (RANK1, RANK2):
            raise WrongFlagKind(f"unknown flag kind {kind!r}")
        if not is_atilde_shape(lattice):
            raise UnsupportedShape(
                "cusp flags need the two-hyperbolic-planes shape "
                "(may not exist over Q for n <= 4)"
            )
        return cls(kind, lattice)

    @property
    def n(self) -> int:
        return self.lattice.rank - 2

    @property
    def block(self):
        return atilde_block(self.lattice)

    def generators(self):
        m = self.lattice.rank
        e = lambda i: tuple(1 if k == i else 0 for k in range(m))
        return (e(0),) if self.kind == RANK1 else (e(0), e(1))


@dataclass(frozen=True)
class BoundaryData:
    """Summary of the boundary data attached to a cusp flag."""

    kind: str
    u_dim: int
    v_dim: int
    f_dim: int
    cone: dict
    fibration: str


def boundary_data(flag: CuspFlag) -> BoundaryData:
    n = flag.n
    if flag.kind == RANK1:
        return BoundaryData(
            kind=RANK1,
            u_dim=n,
            v_dim=0,
            f_dim=0,
            cone={
                "kind": "self_adjoint_light_cone",
                "coordinates": "(y1, y3, y4vec)",
                "inequalities": ["y1*y3 + (1/2) y4 A y4^t > 0", "y3 > 0"],
            },
            fibration="trivial (point cusp): B_alpha = U_alpha_C",
        )
    return BoundaryData(
        kind=RANK2,
        u_dim=1,
        v_dim=n - 2,
        f_dim=1,
        cone={
            "kind": "half_line",
            "coordinates": "(w1,)",
            "inequalities": ["w1 > 0"],
        },
        fibration=(
            "(n-2)-fold fibre product of the universal elliptic curve over "
            "the modular curve (descriptor only)"
        ),
    )


def _block_pairing(A, x, y):
    return sum(x[i] * sum(A[i][j] * y[j] for j in range(len(y))) for i in range(len(x))) \
        if A else Fraction(0)


def build_unipotent(flag: CuspFlag, params):
    """Unipotent element from its free parameters.

    rank-1: params = (y1, y3, y4vec); rank-2: params = (y4vec, z4vec, x3).
    Dependent entries follow from g^t Atilde g = Atilde.
    """
    m = flag.lattice.rank
    A = flag.block
    g = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    if flag.kind == RANK1:
        if len(params) != 3 or isinstance(params[0], (tuple, list)) \
                or isinstance(params[1], (tuple, list)):
            raise WrongFlagKind("rank-1 params are (y1, y3, y4vec)")
        y1, y3 = frac(params[0]), frac(params[1])
        y4 = la.vec(params[2])
        if len(y4) != m - 4:
            raise WrongFlagKind("y4 must have length n-2")
        Ay4 = la.mat_vec(A, y4) if A else ()
        g[0][1] = -y1
        g[0][3] = -y3
        g[1][2] = y3
        g[3][2] = y1
        g[0][2] = -(y1 * y3 + Fraction(1, 2) * _block_pairing(A, y4, y4))
        for k in range(m - 4):
            g[4 + k][2] = y4[k]
            g[0][4 + k] = -Ay4[k]
        return la.mat(g)
    if len(params) != 3:
        raise WrongFlagKind("rank-2 params are (y4vec, z4vec, x3)")
    y4, z4, x3 = la.vec(params[0]), la.vec(params[1]), frac(params[2])
    if len(y4) != m - 4 or len(z4) != m - 4:
        raise WrongFlagKind("y4, z4 must have length n-2")
    Ay4 = la.mat_vec(A, y4) if A else ()
    Az4 = la.mat_vec(A, z4) if A else ()
    g[0][2] = -Fraction(1, 2) * _block_pairing(A, y4, y4)
    g[1][3] = -Fraction(1, 2) * _block_pairing(A, z4, z4)
    g[0][3] = x3
    g[1][2] = -_block_pairing(A, y4, z4) - x3
    for k in range(m - 4):
        g[4 + k][2] = y4[k]
        g[4 + k][3] = z4[k]
        g[0][4 + k] = -Ay4[k]
        g[1][4 + k] = -Az4[k]
    return la.mat(g)


def unipotent_params(flag: CuspFlag, g):
    """Free parameters of a unipotent-radical element (no validation)."""
    if flag.kind == RANK1:
        y3 = g[1][2]
        y1 = g[3][2]
        y4 = tuple(g[4 + k][2] for k in range(flag.lattice.rank - 4))
        return (y1, y3, y4)
    y4 = tuple(g[4 + k][2] for k in range(flag.lattice.rank - 4))
    z4 = tuple(g[4 + k][3] for k in range(flag.lattice.rank - 4))
    x3 = g[0][3]
    return (y4, z4, x3)


def is_in_unipotent(g, flag: CuspFlag) -> bool:
    """Pattern match against the displayed shape plus the isometry condition."""
    m = flag.lattice.rank
    g = la.mat(g)
    if len(g) != m:
        return False
    rebuilt = build_unipotent(flag, unipotent_params(flag, g))
    if not la.mat_eq(g, rebuilt):
        return False
    G = flag.lattice.gram
    return la.mat_eq(la.mat_mul(la.mat_mul(la.transpose(g), G), g), G)


def center_element(flag: CuspFlag, w1):
    """Element of the centre U_alpha with parameter w1 (rank-2 flags)."""
    if flag.kind != RANK2:
        raise WrongFlagKind("centre parametrized by w1 only for rank-2 flags")
    zeros = tuple(0 for _ in range(flag.lattice.rank - 4))
    return build_unipotent(flag, (zeros, zeros, frac(-w1)))


def omega_member(u, flag: CuspFlag) -> bool:
    """The displayed cone inequalities on centre coordinates."""
    if flag.kind == RANK1:
        if len(u) != 3:
            raise WrongFlagKind("rank-1 cone coordinates are (y1, y3, y4vec)")
        y1, y3 = frac(u[0]), frac(u[1])
        y4 = la.vec(u[2]) if not isinstance(u[2], (int, Fraction)) else la.vec([u[2]])
        A = flag.block
        if len(y4) != len(A):
            raise WrongFlagKind("y4 must match the block size")
        return y1 * y3 + Fraction(1, 2) * _block_pairing(A, y4, y4) > 0 and y3 > 0
    if len(u) != 1:
        raise WrongFlagKind("rank-2 cone coordinate is (w1,)")
    return frac(u[0]) > 0


def chart_coords(flag: CuspFlag, v):
    """Boundary-chart coordinates of an ambient point with v2-coordinate != 0.

    rank-1: (v3/v2, v1/v2, v4/v2, ...) ordered to match the centre's
    (y1, y3, y4) labels.  rank-2 uses the same tuple; its first entry is
    the F_alpha = upper-half-plane coordinate.
    """
    if not v[2]:
        raise NotInParabolic("chart requires a nonzero v2 coordinate")
    w = [x / v[2] for x in v]
    return (w[3], w[1]) + tuple(w[4:])


def phi_alpha(p, flag: CuspFlag):
    """The displayed projection B_alpha -> U_alpha.

    p is a chart tuple (see chart_coords).  rank-1 output: (y1, y3, y4vec)
    = componentwise imaginary parts; rank-2 output: the single coordinate
    (2 Im(y1) Im(y3) + Im(y4)^t A Im(y4),).
    """
    im = tuple(im_part(c) for c in p)
    if flag.kind == RANK1:
        return (im[0], im[1], tuple(im[2:]))
    A = flag.block
    val = 2 * im[0] * im[1] + _block_pairing(A, im[2:], im[2:])
    return (val,)


def stabilizes_flag(g, flag: CuspFlag) -> bool:
    m = flag.lattice.rank
    cols = la.transpose(g)
    if flag.kind == RANK1:
        return all(cols[0][i] == 0 for i in range(1, m)) and cols[0][0] != 0
    ok = all(cols[j][i] == 0 for j in (0, 1) for i in range(2, m))
    return ok and la.rank(la.mat([cols[0][:2], cols[1][:2]])) == 2


def levi_project(g, flag: CuspFlag):
    """Levi pieces (h_part, ell_part) of an element of P_alpha.

    rank-1: h_part is None (trivial F_alpha), ell_part = (a, M) with a the
    G_m factor and M the induced map on U = e1-perp / e1.
    rank-2: h_part = the 2x2 block acting on F_alpha (a class in PGL2),
    ell_part = its determinant.
    """
    g = la.mat(g)
    if not stabilizes_flag(g, flag):
        raise NotInParabolic("element does not stabilize the flag")
    m = flag.lattice.rank
    if flag.kind == RANK1:
        a = g[0][0]
        idx = [1, 3] + list(range(4, m))
        M = la.mat([[g[i][j] for j in idx] for i in idx])
        return (None, (a, M))
    h = la.mat([[g[0][0], g[0][1]], [g[1][0], g[1][1]]])
    return (h, la.determinant(h))


def levi_cone_action(g, flag: CuspFlag, u):
    """Action of rho_l(g) on centre coordinates, computed by conjugation."""
    if flag.kind == RANK1:
        y1, y3, y4 = u
        elem = build_unipotent(flag, (y1, y3, y4))
    else:
        elem = center_element(flag, u[0])
    gi = la.inverse(la.mat(g))
    conj = la.mat_mul(la.mat_mul(la.mat(g), elem), gi)
    params = unipotent_params(flag, conj)
    if flag.kind == RANK1:
        return (params[0], params[1], params[2])
    return (conj[1][2],)


@dataclass(frozen=True)
class AdjacencyRecord:
    """Inclusion of the rank-2 centre into a rank-1 centre, plus the ray."""

    inclusion: tuple  # image of w1 = 1 in (y1, y3, y4vec) coordinates
    ray: tuple
    ray_is_isotropic: bool


def adjacency_data(f2: CuspFlag, f1_generator, lattice: QuadraticLattice):
    """Adjacency data for a rank-1 line inside the standard rank-2 plane.

    f1_generator is an integral primitive vector; returns None when the
    line does not lie in span(v0, v1).  The record expresses the image of
    the rank-2 centre in the rank-1 centre coordinates of the line's own
    adapted basis.
    """
    if f2.kind != RANK2:
        raise WrongFlagKind("first flag must be rank-2")
    e = la.vec(f1_generator)
    m = lattice.rank
    if any(e[k] != 0 for k in range(2, m)):
        return None
    c0, c1 = int(e[0]), int(e[1])
    from math import gcd

    if gcd(c0, c1) != 1:
        raise ValueError("generator must be primitive")
    # move the line to span(v0) by an SL2 change on both hyperbolic pairs
    ext = _extended_gcd(c0, c1)
    h = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    # columns: v0 -> (c0, c1), v1 -> (-beta, alpha) with alpha c0 + beta c1 = 1
    alpha, beta = ext
    h[0][0], h[1][0] = Fraction(c0), Fraction(c1)
    h[0][1], h[1][1] = Fraction(-beta), Fraction(alpha)
    # dual pair: preserve b(v0,v2), b(v1,v3): block = (h^-1)^t on (v2, v3)
    inv_t = la.transpose(la.inverse(la.mat([[c0, -beta], [c1, alpha]])))
    h[2][2], h[2][3] = inv_t[0][0], inv_t[0][1]
    h[3][2], h[3][3] = inv_t[1][0], inv_t[1][1]
    h = la.mat(h)
    G = lattice.gram
    assert la.mat_eq(la.mat_mul(la.mat_mul(la.transpose(h), G), h), G)
    flag1 = CuspFlag.from_lattice(lattice, RANK1)
    hi = la.inverse(h)
    c = center_element(f2, Fraction(1))
    moved = la.mat_mul(la.mat_mul(hi, c), h)
    if not is_in_unipotent(moved, flag1):
        return None
    y1, y3, y4 = unipotent_params(flag1, moved)
    incl = (y1, y3, y4)
    ray = la.primitive((y1, y3) + tuple(y4))
    A = flag1.block
    qval = ray[0] * ray[1] + Fraction(1, 2) * _block_pairing(A, ray[2:], ray[2:])
    return AdjacencyRecord(inclusion=incl, ray=ray, ray_is_isotropic=(qval == 0))


def _extended_gcd(a, b):
    """(x, y) with a x + b y = gcd(a, b) = 1 for coprime inputs."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        x0, y0 = -x0, -y0
    return (x0, y0)
