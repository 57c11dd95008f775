"""Kernels, cores, co-cores and support-hyperplane fans, at desk scale.

Every computation is windowed by a height bound H with an H-versus-2H
stability certificate; the module reports window-level evidence only and
never claims global admissibility.  Extreme points are computed from
windowed lattice enumerations (hull vertices reduced by an exact-LP
midpoint test against the window pool plus window recession rays), and the
support-hyperplane candidates are facet normals of the windowed hull of
the extreme set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la
from .errors import NotConePreserving, UnstableTruncation
from .fan import Fan, RationalCone, _nonneg_solve, fan_from_maximal, validate_fan
from .qform import QuadraticLattice, diagonalize


class SelfAdjointCone:
    """Open cone {q(y) > 0, <rho, y> > 0} for a signature-(1,k) form.

    inner is the positive-definite self-adjointness form used for all
    kernel pairings <x, y>.
    """

    def __init__(self, gram, positivity_ray, inner=None):
        self.lattice = QuadraticLattice(gram)
        diag, _ = diagonalize(self.lattice)
        pos = sum(1 for d in diag if d > 0)
        if pos != 1:
            raise ValueError("self-adjoint cone needs signature (1, k)")
        self.rho = la.vec(positivity_ray)
        self.dim = self.lattice.rank
        if inner is None:
            inner = la.identity(self.dim)
        self.inner = la.mat(inner)
        idiag, _ = diagonalize(QuadraticLattice(self.inner))
        if any(d <= 0 for d in idiag):
            raise ValueError("inner form must be positive definite")

    def pair(self, x, y) -> Fraction:
        return la.dot(la.mat_vec(self.inner, la.vec(x)), la.vec(y))

    def contains(self, v, closed: bool = False) -> bool:
        q = self.lattice.quadratic(v)
        p = la.dot(self.rho, la.vec(v))
        if closed:
            return q >= 0 and p >= 0
        return q > 0 and p > 0


def first_quadrant_cone() -> SelfAdjointCone:
    """q = 2xy, positivity x + y > 0: the open first quadrant."""
    return SelfAdjointCone([[0, 1], [1, 0]], (1, 1))


def light_cone(k: int) -> SelfAdjointCone:
    """x0^2 - x1^2 - ... - xk^2 > 0, x0 > 0 in R^{k+1}."""
    G = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]
    G[0][0] = Fraction(1)
    for i in range(1, k + 1):
        G[i][i] = Fraction(-1)
    rho = tuple(1 if i == 0 else 0 for i in range(k + 1))
    return SelfAdjointCone(G, rho)


def cone_lattice_points(cone: SelfAdjointCone, height: int, closed: bool = False):
    """Integral vectors of sup-norm <= height in the (closed) cone, minus 0."""
    if height < 1:
        raise ValueError("height must be >= 1")
    out = []
    rng = range(-height, height + 1)
    for v in itertools.product(rng, repeat=cone.dim):
        if not any(v):
            continue
        if cone.contains(v, closed=closed):
            out.append(v)
    return tuple(sorted(out))


def boundary_rays(cone: SelfAdjointCone, height: int):
    """Primitive integral rays on the boundary of the cone in the window
    (q = 0 directions; the recession generators used by hull reductions).

    A window under-approximation of the closed cone; the stability
    certificate covers the truncation.
    """
    rays = set()
    rng = range(-height, height + 1)
    for v in itertools.product(rng, repeat=cone.dim):
        if not any(v):
            continue
        if cone.lattice.quadratic(v) == 0 and la.dot(cone.rho, la.vec(v)) >= 0:
            rays.add(la.primitive(v))
    return tuple(sorted(rays))


@dataclass(frozen=True)
class KernelSpec:
    """K_T = {x in closed cone : <x, t> >= 1 for all t in T}.

    The comparison is closed (>= 1); semi-duality and hull computations
    need the closed version (the strict variant differs only on the
    boundary), and reports carry the flag.
    """

    points: tuple
    comparison: str = "closed"

    def member(self, x, cone: SelfAdjointCone) -> bool:
        if not cone.contains(x, closed=True):
            return False
        return all(cone.pair(x, t) >= 1 for t in self.points)


def semi_dual(points, cone: SelfAdjointCone) -> KernelSpec:
    """Semi-dual of a point set: the kernel K_T with T = points."""
    pts = tuple(tuple(la.frac(x) for x in p) for p in points)
    if not pts:
        raise ValueError("semi_dual needs a nonempty point set")
    for p in pts:
        if not cone.contains(p, closed=True) or not any(p):
            raise ValueError("semi-dual points must lie in the closed cone minus 0")
    return KernelSpec(points=pts)


@dataclass(frozen=True)
class ExtremeSet:
    points: tuple
    truncation: int
    variant: str
    stable: bool


def _reducible(v, pool, recession, cone: SelfAdjointCone):
    """Exact test: v in conv(pool minus v) + cone(recession).

    Fast path first: v - s in the closed cone for a single pool point s
    (covers the K = union of e + closed-cone structure); then the exact LP
    against the window recession rays.
    """
    for s in pool:
        if tuple(s) == tuple(v):
            continue
        diff = tuple(a - b for a, b in zip(v, s))
        if any(diff) and cone.contains(diff, closed=True):
            return True
    cols = []
    for p in pool:
        if tuple(p) == tuple(v):
            continue
        cols.append(tuple(p) + (1,))
    for r in recession:
        cols.append(tuple(r) + (0,))
    if not cols:
        return False
    A = la.transpose(cols)
    b = tuple(v) + (1,)
    return _nonneg_solve(A, b)


def _extreme_points_of(pool, recession, cone: SelfAdjointCone):
    return tuple(v for v in sorted(pool)
                 if not _reducible(v, pool, recession, cone))


def _window_points_of_kernel(K: KernelSpec, cone: SelfAdjointCone, height: int):
    out = []
    rng = range(-height, height + 1)
    for v in itertools.product(rng, repeat=cone.dim):
        if any(v) and K.member(v, cone):
            out.append(v)
    return tuple(sorted(out))


def core_extremes(cone: SelfAdjointCone, variant: str, height: int) -> ExtremeSet:
    """Window extreme points of the selected core, with stability certificate.

    central      : K_cent = closed convex hull of (open cone) lattice points
    perfect      : K_perf = semi-dual of hull(closed cone lattice points - 0)
    central_dual : the co-core K_cent^vee = K_T with T = E(K_cent)
    Certification: the same computation at height 2H must return the same
    points inside the H window; otherwise UnstableTruncation.
    """
    if variant not in ("central", "perfect", "central_dual"):
        raise ValueError(f"unknown core variant {variant!r}")
    e_h = _core_extremes_window(cone, variant, height)
    e_2h = _core_extremes_window(cone, variant, 2 * height)
    inside = tuple(p for p in e_2h if max(abs(x) for x in p) <= height)
    stable = set(e_h) == set(inside)
    if not stable:
        raise UnstableTruncation(
            f"window H={height} returns {e_h}, window 2H keeps {inside}"
        )
    return ExtremeSet(points=e_h, truncation=height, variant=variant, stable=True)


def _core_extremes_window(cone: SelfAdjointCone, variant: str, height: int):
    recession = boundary_rays(cone, height)
    if variant == "central":
        pool = cone_lattice_points(cone, height, closed=False)
        return _extreme_points_of(pool, recession, cone)
    if variant == "perfect":
        closed_pts = cone_lattice_points(cone, height, closed=True)
        hull_vertices = _extreme_points_of(closed_pts, recession, cone)
        K = KernelSpec(points=tuple(hull_vertices))
        pool = _window_points_of_kernel(K, cone, height)
        return _extreme_points_of(pool, recession, cone)
    # central_dual
    pool0 = cone_lattice_points(cone, height, closed=False)
    e_cent = _extreme_points_of(pool0, recession, cone)
    K = KernelSpec(points=tuple(e_cent))
    pool = _window_points_of_kernel(K, cone, height)
    return _extreme_points_of(pool, recession, cone)


@dataclass
class SupportFanReport:
    degenerate: bool
    functionals: tuple
    conventions: tuple = (
        "kernel-comparison-closed",
        "support-candidates-from-windowed-hull-facets",
    )
    warnings: list = field(default_factory=list)


def support_fan(K: KernelSpec, E: ExtremeSet, cone: SelfAdjointCone,
                window: int | None = None):
    """Support-hyperplane fan of a kernel from its windowed extreme set.

    Candidates y are facet normals (level-1 normalized) of the windowed
    hull of E; y enters Y_K when its contact set with E spans the space.
    Returns (fan, report); a degenerate Y_K yields the trivial single-cone
    decomposition of the windowed rational closure with a warning.
    """
    window = window or E.truncation
    pts = [la.vec(p) for p in E.points]
    dim = cone.dim
    recession = boundary_rays(cone, window)
    functionals = []
    for subset in itertools.combinations(pts, dim):
        # y with <e_i, y>_inner = 1 for the chosen contact points
        rows = [la.mat_vec(cone.inner, e) for e in subset]
        y = la.solve(rows, [Fraction(1)] * dim)
        if y is None:
            continue
        if not cone.contains(y, closed=True):
            continue
        if any(cone.pair(e, y) < 1 for e in pts):
            continue  # does not support K from below
        if any(la.dot(la.mat_vec(cone.inner, la.vec(r)), la.vec(y)) < 0
               for r in recession):
            continue  # cuts the recession cone
        contact = [e for e in pts if cone.pair(e, y) == 1]
        if la.rank(contact) < dim:
            continue
        functionals.append((tuple(y), tuple(tuple(e) for e in contact)))
    functionals = sorted(set(functionals))
    if not functionals:
        trivial = RationalCone(list(recession), dim)
        fan = fan_from_maximal([trivial], dim)
        report = SupportFanReport(degenerate=True, functionals=())
        report.warnings.append(
            "DegenerateSupport: no support hyperplane has a spanning contact "
            "set in the window; returning the trivial decomposition"
        )
        return fan, report
    cones = []
    for y, contact in functionals:
        cones.append(RationalCone([la.primitive(e) for e in contact], dim))
    fan = fan_from_maximal(cones, dim)
    report = SupportFanReport(degenerate=False,
                              functionals=tuple(y for y, _ in functionals))
    rep = validate_fan(fan)
    if not rep.valid:
        report.warnings.append(f"window fan failed validation: {rep.violations}")
    return fan, report


def support_function(report: SupportFanReport, cone: SelfAdjointCone):
    """phi(x) = min over support functionals of <x, y>: the projectivity
    certificate (convex, piecewise linear, linear on the top cones)."""
    ys = report.functionals

    def phi(x):
        return min(cone.pair(x, y) for y in ys)

    return phi


@dataclass
class GammaCheckReport:
    preserved: bool
    orbits: list
    excused: list
    violations: list


def gamma_check(fan: Fan, gens, cone: SelfAdjointCone, window_bound: int) -> GammaCheckReport:
    """Verify generators map window cones into the fan; report orbit classes.

    An image cone is excused when one of its rays leaves the coordinate
    window.  Raises NotConePreserving when a generator fails to preserve
    the cone itself, or when an unexcused image cone is missing.
    """
    G = cone.lattice.gram
    for g in gens:
        g = la.mat(g)
        if not la.mat_eq(la.mat_mul(la.mat_mul(la.transpose(g), G), g), G):
            raise NotConePreserving("generator is not an isometry of the cone form")
        sample = None
        for c in fan.top_cones():
            s = tuple(sum(r[k] for r in c.rays) for k in range(cone.dim))
            if any(s):
                sample = s
                break
        if sample is not None:
            img = la.mat_vec(g, sample)
            if la.dot(cone.rho, img) <= 0:
                raise NotConePreserving("generator swaps the cone components")
    tops = list(fan.top_cones())
    index = {c: i for i, c in enumerate(tops)}
    parent = list(range(len(tops)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    excused = []
    violations = []
    for gi, g in enumerate(gens):
        g = la.mat(g)
        for c in tops:
            img_rays = [la.primitive(la.mat_vec(g, r)) for r in c.rays]
            img = RationalCone(img_rays, fan.rank)
            if img in index:
                union(index[c], index[img])
                continue
            if any(max(abs(x) for x in r) > window_bound for r in img_rays):
                excused.append({"generator": gi, "cone": list(c.rays),
                                "image": [list(r) for r in img_rays]})
                continue
            violations.append({"generator": gi, "cone": list(c.rays),
                               "image": [list(r) for r in img_rays]})
    if violations:
        raise NotConePreserving(f"unexcused image cones: {violations}")
    classes = {}
    for i, c in enumerate(tops):
        classes.setdefault(find(i), []).append(list(c.rays))
    return GammaCheckReport(
        preserved=True,
        orbits=sorted(classes.values()),
        excused=excused,
        violations=[],
    )
