"""Rational polyhedral cones, fans, toric charts and orbits.

All arithmetic is exact (integers and Fractions); every predicate is a
decision procedure.  Cones are stored by primitive integral ray
generators, canonicalized to extreme rays via double description; facet
normals are cached after the first dual computation.

Scale expectations are desk scale (ambient rank <= 5 or so, coordinates in
the hundreds); the algorithms favour clarity and exactness over speed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la
from .errors import ConeNotInFan


def _extreme_rays_of_halfspaces(normals, dim, equations=()):
    """Primitive extreme rays of {x : <n_i, x> >= 0, <e_j, x> = 0}.

    Assumes the solution cone is pointed (no line satisfies all
    constraints); callers handle lineality themselves.
    """
    rows = [la.vec(n) for n in normals] + [la.vec(e) for e in equations] \
        + [tuple(-x for x in la.vec(e)) for e in equations]
    cand = set()
    m = len(rows)
    eff_rank = la.rank(rows) if rows else 0
    if eff_rank < dim - 1:
        return ()
    for subset in itertools.combinations(range(m), dim - 1):
        sub = [rows[i] for i in subset]
        ker = la.nullspace(sub) if sub else la.nullspace([tuple(Fraction(0) for _ in range(dim))])
        if len(ker) != 1:
            continue
        for sign in (1, -1):
            v = la.primitive(tuple(sign * x for x in ker[0]))
            if all(x == 0 for x in v):
                continue
            if all(la.dot(r, v) >= 0 for r in rows):
                cand.add(v)
    # drop rays that are nonnegative combinations of the others
    out = []
    for v in sorted(cand):
        others = [w for w in cand if w != v]
        if not _in_cone_vrep(v, others):
            out.append(v)
    return tuple(out)


def _in_cone_vrep(x, rays):
    """Exact membership of x in cone(rays) via feasibility."""
    if all(v == 0 for v in x):
        return True
    if not rays:
        return False
    return _nonneg_solve(la.transpose([la.vec(r) for r in rays]), la.vec(x))


def _nonneg_solve(A, b):
    """Feasibility of A lam = b, lam >= 0, by exact phase-1 simplex."""
    m = len(A)
    n = len(A[0]) if m else 0
    # tableau with artificial variables
    rows = []
    for i in range(m):
        bi = la.frac(b[i])
        row = [la.frac(x) for x in A[i]]
        if bi < 0:
            bi = -bi
            row = [-x for x in row]
        rows.append(row + [bi])
    # objective: minimize sum of artificials = sum(b) - sum over basic rows
    basis = list(range(n, n + m))
    # extend rows with artificial identity
    for i in range(m):
        rows[i] = rows[i][:n] + [Fraction(1 if j == i else 0) for j in range(m)] + [rows[i][n]]
    cost = [Fraction(0)] * (n + m) + [Fraction(0)]
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] += rows[i][j]
    for j in range(n, n + m):
        cost[j] -= 1
    # cost row now: sum of constraint rows with artificial columns zeroed
    it = 0
    while True:
        it += 1
        if it > 10000:
            raise RuntimeError("simplex iteration bound exceeded")
        piv_col = next((j for j in range(n + m) if cost[j] > 0), None)
        if piv_col is None:
            break
        best = None
        for i in range(m):
            if rows[i][piv_col] > 0:
                ratio = rows[i][-1] / rows[i][piv_col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break  # unbounded reduced cost cannot happen in phase 1
        _, pi = best
        pv = rows[pi][piv_col]
        rows[pi] = [x / pv for x in rows[pi]]
        for i in range(m):
            if i != pi and rows[i][piv_col] != 0:
                f = rows[i][piv_col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pi])]
        f = cost[piv_col]
        cost = [x - f * y for x, y in zip(cost, rows[pi])]
        basis[pi] = piv_col
    return cost[-1] == 0


class RationalCone:
    """Cone generated by primitive integral rays (pointed by default).

    degenerate=True marks cones allowed to contain lines; such cones carry
    explicit line generators and arise only as duals of lower-dimensional
    cones.
    """

    def __init__(self, rays, rank: int, lines=(), canonicalize: bool = True):
        self.rank = int(rank)
        rays = [la.primitive(r) for r in rays]
        rays = [r for r in rays if any(r)]
        self.lines = tuple(sorted(la.primitive(l) for l in lines))
        if canonicalize and rays:
            rays = self._extreme_subset(rays)
        self.rays = tuple(sorted(set(rays)))

    @staticmethod
    def _extreme_subset(rays):
        rays = sorted(set(rays))
        out = []
        for i, r in enumerate(rays):
            others = [w for j, w in enumerate(rays) if j != i]
            if not _in_cone_vrep(r, others):
                out.append(r)
        return out

    @property
    def is_degenerate(self) -> bool:
        return bool(self.lines)

    @property
    def dim(self) -> int:
        gens = list(self.rays) + list(self.lines)
        return la.rank([la.vec(g) for g in gens]) if gens else 0

    def __eq__(self, other):
        return (isinstance(other, RationalCone) and self.rank == other.rank
                and self.rays == other.rays and self.lines == other.lines)

    def __hash__(self):
        return hash((self.rank, self.rays, self.lines))

    def __repr__(self):
        return f"RationalCone(rays={list(self.rays)}, rank={self.rank})"

    def facet_normals(self):
        """Primitive inequalities cutting the cone inside its span, plus the
        span equations; cached."""
        if not hasattr(self, "_facets"):
            self._facets = self._compute_facets()
        return self._facets

    def _compute_facets(self):
        gens = [la.vec(r) for r in self.rays] + [la.vec(l) for l in self.lines] \
            + [tuple(-x for x in la.vec(l)) for l in self.lines]
        if not gens:
            eqs = tuple(tuple(la.identity(self.rank)[i]) for i in range(self.rank))
            return ((), tuple(la.primitive(e) for e in eqs))
        span_eqs = la.nullspace(gens)
        span_eqs = tuple(la.primitive(e) for e in span_eqs)
        # dual generators within the span: inequalities valid on the cone
        ineqs = _extreme_rays_of_halfspaces(
            [la.vec(r) for r in self.rays], self.rank,
            equations=[la.vec(e) for e in span_eqs] + [la.vec(l) for l in self.lines],
        )
        return (ineqs, span_eqs)

    def contains(self, x) -> bool:
        ineqs, eqs = self.facet_normals()
        x = la.vec(x)
        return all(la.dot(e, x) == 0 for e in eqs) and all(la.dot(d, x) >= 0 for d in ineqs)

    def contains_in_interior(self, x) -> bool:
        """Relative interior membership."""
        ineqs, eqs = self.facet_normals()
        x = la.vec(x)
        return all(la.dot(e, x) == 0 for e in eqs) and all(la.dot(d, x) > 0 for d in ineqs)

    def barycenter(self):
        if not self.rays:
            return tuple(0 for _ in range(self.rank))
        s = [sum(r[k] for r in self.rays) for k in range(self.rank)]
        return la.primitive(s)


def dual_cone(c: RationalCone) -> RationalCone:
    """Dual cone in the dual lattice (double description).

    The dual of a non-full-dimensional cone is degenerate: its lines are
    the orthogonal complement of span(c).
    """
    gens = [la.vec(r) for r in c.rays] + [la.vec(l) for l in c.lines] \
        + [tuple(-x for x in la.vec(l)) for l in c.lines]
    if not gens:
        ident = la.identity(c.rank)
        return RationalCone([], c.rank,
                            lines=[tuple(int(x) for x in ident[i]) for i in range(c.rank)],
                            canonicalize=False)
    lines = la.kernel_int(gens)
    rays = _extreme_rays_of_halfspaces(gens, c.rank, equations=lines)
    return RationalCone(rays, c.rank, lines=lines, canonicalize=False)


def intersect_cones(a: RationalCone, b: RationalCone) -> RationalCone:
    ia, ea = a.facet_normals()
    ib, eb = b.facet_normals()
    normals = list(ia) + list(ib)
    eqs = list(ea) + list(eb)
    rays = _extreme_rays_of_halfspaces(normals, a.rank, equations=eqs)
    return RationalCone(rays, a.rank)


def faces(c: RationalCone):
    """All faces of c including the zero cone and c itself (memoized)."""
    if c.is_degenerate:
        raise ValueError("face enumeration implemented for pointed cones only")
    if hasattr(c, "_faces"):
        return c._faces
    ineqs, _ = c.facet_normals()
    rays = list(c.rays)
    seen = {}
    frontier = [tuple(rays)]
    seen[tuple(rays)] = True
    while frontier:
        nxt = []
        for rs in frontier:
            for d in ineqs:
                cut = tuple(r for r in rs if la.dot(la.vec(d), la.vec(r)) == 0)
                if cut not in seen:
                    seen[cut] = True
                    nxt.append(cut)
        frontier = nxt
    # always include the zero face
    seen[()] = True
    out = tuple(RationalCone(list(rs), c.rank, canonicalize=False) for rs in sorted(seen))
    c._faces = out
    return out


def is_face(f: RationalCone, c: RationalCone) -> bool:
    return f in faces(c)


class Fan:
    """Finite face-closed collection of cones (validity checked on demand)."""

    def __init__(self, cones, rank: int):
        self.rank = int(rank)
        uniq = []
        for c in cones:
            if c not in uniq:
                uniq.append(c)
        self.cones = tuple(sorted(uniq, key=lambda c: (c.dim, c.rays)))

    def __contains__(self, c):
        return c in self.cones

    def __iter__(self):
        return iter(self.cones)

    def __len__(self):
        return len(self.cones)

    def maximal_cones(self):
        out = []
        for c in self.cones:
            strictly_below = any(
                d != c and _subcone(c, d) and not _subcone(d, c) for d in self.cones
            )
            if not strictly_below:
                out.append(c)
        return tuple(out)

    def top_cones(self, dim=None):
        dim = self.rank if dim is None else dim
        return tuple(c for c in self.cones if c.dim == dim)


def _subcone(a: RationalCone, b: RationalCone) -> bool:
    return all(b.contains(r) for r in a.rays)


def fan_from_maximal(cones, rank: int) -> Fan:
    """Close a set of cones under taking faces."""
    allc = []
    for c in cones:
        for f in faces(c):
            if f not in allc:
                allc.append(f)
    return Fan(allc, rank)


@dataclass
class FanReport:
    valid: bool
    violations: list = field(default_factory=list)


def validate_fan(f: Fan) -> FanReport:
    """Face closure plus the pairwise-intersection condition."""
    report = FanReport(valid=True)
    cone_set = list(f.cones)
    for c in cone_set:
        for fc in faces(c):
            if fc not in f:
                report.valid = False
                report.violations.append(
                    {"kind": "missing_face", "cone": list(c.rays), "face": list(fc.rays)}
                )
                return report
    for a, b in itertools.combinations(cone_set, 2):
        inter = intersect_cones(a, b)
        if inter not in f or inter not in faces(a) or inter not in faces(b):
            report.valid = False
            report.violations.append(
                {
                    "kind": "bad_intersection",
                    "cone_a": list(a.rays),
                    "cone_b": list(b.rays),
                    "intersection": list(inter.rays),
                }
            )
            return report
    return report


def is_regular(c: RationalCone) -> bool:
    """Simplicial with primitive generators extending to a lattice basis."""
    rays = [la.vec(r) for r in c.rays]
    if not rays:
        return True
    d = c.dim
    if len(rays) != d:
        return False
    from math import gcd

    g = 0
    for subset in itertools.combinations(range(c.rank), d):
        sub = [[rays[i][j] for j in subset] for i in range(d)]
        g = gcd(g, abs(int(la.determinant(sub))))
    return g == 1


def is_complete(f: Fan) -> bool:
    """Exact completeness via facet pairing of the top-dimensional cones."""
    n = f.rank
    tops = f.top_cones(n)
    if not tops:
        return False
    count = {}
    for c in tops:
        for fc in faces(c):
            if fc.dim == n - 1:
                count[fc] = count.get(fc, 0) + 1
    if not all(v == 2 for v in count.values()):
        return False
    # belt and braces: an interior sample of each chamber plus a global
    # sample must be covered
    probe = tuple(range(1, n + 1))
    if not any(c.contains(probe) for c in tops):
        return False
    return True


def star_subdivide(f: Fan, ray) -> Fan:
    """Star subdivision of a fan at a primitive ray."""
    ray = la.primitive(ray)
    new_max = []
    for c in f.maximal_cones():
        if not c.contains(ray):
            new_max.append(c)
            continue
        for fc in faces(c):
            if fc.dim == c.dim - 1 and not fc.contains(ray):
                new_max.append(RationalCone(list(fc.rays) + [ray], f.rank))
    return fan_from_maximal(new_max, f.rank)


def barycentric_subdivide(f: Fan, selector) -> Fan:
    """Star subdivision at the primitive barycenter of each selected cone.

    selector is a predicate on cones or an explicit iterable of cones;
    selected cones of dimension <= 1 are ignored (their barycenter is a
    ray of the fan already).
    """
    if callable(selector):
        selected = [c for c in f.cones if selector(c)]
    else:
        selected = [c for c in selector]
    selected = [c for c in selected if c.dim >= 2]
    out = f
    for c in sorted(selected, key=lambda c: (-c.dim, c.rays)):
        if c not in out:
            continue
        out = star_subdivide(out, c.barycenter())
    return out


def _resolution_ray(c: RationalCone):
    """Stellar-subdivision ray that strictly decreases multiplicity.

    Non-simplicial cones get their primitive barycenter (simplicializing);
    simplicial non-regular cones get the lexicographically smallest nonzero
    lattice point of the half-open fundamental parallelepiped, whose
    barycentric coordinates are all < 1, so every resulting piece has
    strictly smaller multiplicity.  Plain primitive-barycenter iteration
    does not terminate in general (cone((1,0),(7,10)) cycles at index 5).
    """
    rays = [la.vec(r) for r in c.rays]
    if len(rays) != c.dim:
        return c.barycenter()
    cols = [tuple(int(x) for x in r) for r in c.rays]
    best = None
    MtM_inv = la.inverse([[la.dot(a, b) for b in cols] for a in cols])
    for p in _parallelepiped_points(cols):
        if not any(p):
            continue
        rhs = [la.dot(col, p) for col in cols]
        t = la.mat_vec(MtM_inv, rhs)
        if all(ti < 1 for ti in t):
            q = la.primitive(p)
            if best is None or q < best:
                best = q
    if best is None:
        raise RuntimeError("simplicial non-regular cone without interior point")
    return best


def make_regular(f: Fan, max_rounds: int = 30) -> Fan:
    """Iterate stellar subdivision on non-regular cones until regular.

    Works on the maximal cones locally (the inserted ray is interior to the
    processed cone, so only cones containing it are replaced) and closes
    under faces once at the end.
    """
    maxcones = list(f.maximal_cones())
    for _ in range(max_rounds):
        bad = []
        for c in maxcones:
            for fc in faces(c):
                if fc.dim >= 2 and not is_regular(fc) and fc not in bad:
                    bad.append(fc)
        if not bad:
            return fan_from_maximal(maxcones, f.rank)
        for b in sorted(bad, key=lambda c: (-c.dim, c.rays)):
            rho = _resolution_ray(b)
            nxt = []
            for c in maxcones:
                if not c.contains(rho):
                    nxt.append(c)
                    continue
                for fc in faces(c):
                    if fc.dim == c.dim - 1 and not fc.contains(rho):
                        nxt.append(RationalCone(list(fc.rays) + [rho], f.rank))
            maxcones = nxt
    raise RuntimeError(f"not regular after {max_rounds} rounds")


def _parallelepiped_points(cols):
    """Integer points of {sum t_i c_i : t in [0,1]^k} for independent cols."""
    k = len(cols)
    n = len(cols[0])
    # bounding box of the vertices (all subset sums of columns)
    mins = [0] * n
    maxs = [0] * n
    for j in range(n):
        s = 0
        for c in cols:
            if c[j] < 0:
                mins[j] += c[j]
            else:
                maxs[j] += c[j]
    pts = []
    # solve t = M^{-1} x on the span; cols independent so use least squares
    # via solving the k x k system (M^t M) t = M^t x exactly
    MtM = [[la.dot(a, b) for b in cols] for a in cols]
    MtM_inv = la.inverse(MtM)
    for x in itertools.product(*[range(mins[j], maxs[j] + 1) for j in range(n)]):
        rhs = [la.dot(c, x) for c in cols]
        t = la.mat_vec(MtM_inv, rhs)
        # check x actually equals sum t_i c_i (x may be off-span)
        recon = [sum(t[i] * cols[i][j] for i in range(k)) for j in range(n)]
        if list(map(Fraction, x)) != recon:
            continue
        if all(0 <= ti <= 1 for ti in t):
            pts.append(tuple(int(v) for v in x))
    return pts


def _triangulate(c: RationalCone):
    """Split a pointed cone into simplicial subcones (lists of rays)."""
    rays = list(c.rays)
    if la.rank([la.vec(r) for r in rays]) == len(rays):
        return [tuple(rays)]
    r0 = rays[0]
    pieces = []
    for fc in faces(c):
        if fc.dim == c.dim - 1 and not fc.contains(r0):
            for sub in _triangulate(fc):
                pieces.append(tuple(sub) + (r0,))
    return pieces


def hilbert_basis(c: RationalCone):
    """Minimal monoid generators of dual(c) cap M.

    For pointed full-dimensional c this is the unique minimal generating
    set (Hilbert basis) of the chart monoid; for lower-dimensional cones
    the dual is degenerate and the returned set consists of +/- the
    lineality basis together with the Hilbert basis of the pointed part
    (monoid generators, not claimed minimal).
    """
    d = dual_cone(c)
    if d.is_degenerate:
        gens = []
        for l in d.lines:
            gens.append(l)
            gens.append(tuple(-x for x in l))
        pointed = RationalCone(d.rays, d.rank)
        if pointed.rays:
            gens.extend(_hilbert_basis_pointed(pointed, c))
        return tuple(sorted(set(gens)))
    return tuple(_hilbert_basis_pointed(d, c))


def _hilbert_basis_pointed(d: RationalCone, primal: RationalCone):
    cand = set(d.rays)
    for tri in _triangulate(d):
        cols = [tuple(int(x) for x in r) for r in tri]
        for p in _parallelepiped_points(cols):
            if any(p):
                cand.add(tuple(int(x) for x in p))
    # grade by a strictly positive functional: the sum of primal rays spans
    # the interior pairing (fall back to coordinate sum of dual generators)
    if primal.rays:
        w = [sum(r[k] for r in primal.rays) for k in range(d.rank)]
    else:
        w = [1] * d.rank
    cand = sorted(cand, key=lambda v: (la.dot(la.vec(w), la.vec(v)), v))
    basis = []
    for v in cand:
        reducible = False
        for h in basis:
            diff = tuple(a - b for a, b in zip(v, h))
            if any(diff) and d.contains(diff):
                reducible = True
                break
        if not reducible:
            basis.append(v)
    return sorted(basis)


def chart_presentation(c: RationalCone):
    """(generators, binomial relations) for the affine chart of c.

    Relations are a Z-basis of the lattice of additive relations among the
    Hilbert-basis generators, encoded as exponent pairs (lhs, rhs) with
    disjoint supports, i.e. the binomial  prod u_i^lhs_i = prod u_i^rhs_i.
    """
    gens = hilbert_basis(c)
    if not gens:
        return (), ()
    cols = [la.vec(g) for g in gens]
    ker = la.kernel_int(la.transpose(cols))
    rels = []
    for k in ker:
        lhs = tuple(max(x, 0) for x in k)
        rhs = tuple(max(-x, 0) for x in k)
        if any(lhs) or any(rhs):
            if (rhs, lhs) < (lhs, rhs):
                lhs, rhs = rhs, lhs
            rels.append((lhs, rhs))
    return tuple(gens), tuple(sorted(rels))


@dataclass(frozen=True)
class OrbitRecord:
    cone: RationalCone
    orbit_dim: int
    closure_list: tuple
    infinity_image: str


def orbit_record(f: Fan, c: RationalCone) -> OrbitRecord:
    """Torus-orbit data of a fan cone: dim O(sigma) = n - dim sigma and the
    cones whose orbits lie in the closure of O(sigma)."""
    if c not in f:
        raise ConeNotInFan(repr(c))
    closure = tuple(d for d in f.cones if c in faces(d))
    return OrbitRecord(
        cone=c,
        orbit_dim=f.rank - c.dim,
        closure_list=closure,
        infinity_image=f"y + infinity*sigma for sigma with rays {list(c.rays)}",
    )


@dataclass(frozen=True)
class PLSupport:
    """Piecewise-linear support data: a positive value at each ray of a fan.

    The induced function is linear on each simplicial cone; used as the
    projectivity certificate for decompositions.
    """

    fan: Fan
    ray_values: dict

    def value_at(self, x):
        x = la.vec(x)
        for c in self.fan.top_cones():
            if c.contains(x):
                rays = [la.vec(r) for r in c.rays]
                sol = la.solve(la.transpose(rays), x)
                if sol is None:
                    continue
                return sum(s * la.frac(self.ray_values[r]) for s, r in zip(sol, c.rays))
        raise ValueError("point outside the fan support")

    def is_positive(self) -> bool:
        return all(la.frac(v) > 0 for v in self.ray_values.values())
