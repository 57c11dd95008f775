"""Command-line front end: deterministic JSON reports over all modules.

Exit codes: 0 success, 1 domain error (reported on stderr), 2 usage error.
Rationals are serialized as strings; float-mode values are tagged.  The
ORTHOCUSP_THREADS environment variable caps internal parallelism (the
current implementations are sequential, i.e. one worker, which always
respects the cap).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import reportio as io
from .errors import OrthocuspError, UsageError
from .qform import Place, REAL_PLACE, discriminant, hasse_invariant, signature


def _read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise UsageError(f"bad JSON in {path}: {e}")


def thread_cap() -> int:
    raw = os.environ.get("ORTHOCUSP_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError("ORTHOCUSP_THREADS must be an integer")
    if cap < 1:
        raise UsageError("ORTHOCUSP_THREADS must be >= 1")
    return cap


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthocusp", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    inv = add("invariants", help="discriminant, signature, Hasse data")
    inv.add_argument("--gram", required=True)
    inv.add_argument("--primes", default="2,3,5")

    mp = add("map-point", help="convert a point between models")
    mp.add_argument("--point", required=True)
    mp.add_argument("--from", dest="src", required=True,
                    choices=["projective", "tube", "bounded"])
    mp.add_argument("--to", dest="dst", required=True,
                    choices=["projective", "tube", "bounded"])
    mp.add_argument("--mode", default="exact", choices=["exact", "float"])
    mp.add_argument("--tol", type=float, default=1e-9)

    cu = add("cusp", help="boundary data for a cusp flag")
    cu.add_argument("--gram", required=True)
    cu.add_argument("--flag", required=True, choices=["rank1", "rank2"])

    fa = add("fan", help="fan predicates and constructions")
    fa.add_argument("action", choices=["validate", "subdivide", "complete",
                                       "regular", "chart"])
    fa.add_argument("--fan", required=True)
    fa.add_argument("--cone", type=int, default=None,
                    help="index into the fan's cone list")

    cd = add("core-decompose", help="windowed core/co-core fan")
    cd.add_argument("--gram", required=True)
    cd.add_argument("--positivity", default=None,
                    help="comma-separated positivity covector (default e1)")
    cd.add_argument("--variant", default="perfect",
                    choices=["central", "perfect", "central_dual"])
    cd.add_argument("--height", type=int, required=True)
    cd.add_argument("--gens", default=None, help="JSON file with generator matrices")

    ch = add("chern", help="characteristic-class tables")
    chsub = ch.add_subparsers(dest="chern_action", required=True)
    td = chsub.add_parser("td", parents=[common])
    td.add_argument("--degree", type=int, required=True)
    qp = chsub.add_parser("q-poly", parents=[common])
    qp.add_argument("--dim", type=int, required=True)
    qp.add_argument("--rank", type=int, required=True)

    hp = add("hilbert-poly", help="Hilbert polynomial of the compact dual")
    hp.add_argument("--n", type=int, required=True)

    ld = add("local-density", help="congruence-counting local density")
    ld.add_argument("--gram", required=True)
    ld.add_argument("--p", type=int, required=True)
    ld.add_argument("--kmax", type=int, default=4)

    hv = add("hm-volume", help="Hirzebruch-Mumford volume")
    hv.add_argument("--gram", required=True)
    hv.add_argument("--alpha-inf", default=None)
    hv.add_argument("--densities", default=None)
    hv.add_argument("--spn", type=int, default=None)

    dl = add("dim-leading", help="leading term of dim S_ell")
    dl.add_argument("--gram", required=True)
    dl.add_argument("--ell", type=int, required=True)
    dl.add_argument("--alpha-inf", default=None)
    dl.add_argument("--densities", default=None)
    dl.add_argument("--spn", type=int, default=None)

    ra = add("ramify", help="classify ramification of enumerated isometries")
    ra.add_argument("--gram", required=True)
    ra.add_argument("--bound", type=int, required=True)
    return p


def cmd_invariants(args):
    L = io.lattice_from_json(_read_json(args.gram))
    try:
        primes = [int(x) for x in args.primes.split(",") if x.strip()]
    except ValueError:
        raise UsageError("--primes must be a comma-separated list of primes")
    places = [REAL_PLACE] + [Place(p) for p in primes]
    hasse = {}
    for v in places:
        key = "oo" if v.is_real else str(v.p)
        hasse[key] = hasse_invariant(L, v)
    return io.make_report(
        "invariants",
        {
            "disc": discriminant(L),
            "signature": list(signature(L)),
            "hasse": hasse,
        },
    )


def _parse_point(blob, mode):
    from .domains import BoundedFrame, BoundedPoint, Frame, ProjPoint, TubePoint
    from .qform import (
        find_isotropic_split,
        is_atilde_shape,
        orthogonal_complement_basis,
    )

    model, coords, lattice, split = io.point_from_json(blob, mode)
    if split is None and is_atilde_shape(lattice):
        frame = BoundedFrame(lattice)
    else:
        if split is None:
            found = find_isotropic_split(lattice, height=2)
            if found is None:
                raise UsageError("frame needs an explicit e1/e2 split "
                                 "(no small isotropic vector found)")
            split = found + (None,)
        e1, e2, u_basis = split
        if u_basis is None:
            u_basis = orthogonal_complement_basis(lattice, [e1, e2])
        frame = Frame(lattice, e1, e2, u_basis)
    if model == "bounded" and not isinstance(frame, BoundedFrame):
        raise UsageError("bounded-model points need the two-hyperbolic-planes shape")
    if model == "projective":
        return ProjPoint(coords, frame), frame
    if model == "tube":
        return TubePoint(coords, frame), frame
    return BoundedPoint(coords, frame), frame


def cmd_map_point(args):
    from .domains import (
        BoundedPoint,
        ProjPoint,
        TubePoint,
        psi,
        psi_inv,
        upsilon,
        upsilon_inv,
    )

    blob = _read_json(args.point)
    if blob.get("model") != args.src:
        raise UsageError(f"point file is a {blob.get('model')!r} point, not {args.src!r}")
    point, frame = _parse_point(blob, args.mode)

    def to_tube(p):
        if isinstance(p, TubePoint):
            return p
        if isinstance(p, BoundedPoint):
            return upsilon(p)
        return psi_inv(p, frame, tol=args.tol)

    def convert(p, dst):
        if dst == "tube":
            return to_tube(p)
        if dst == "projective":
            return p if isinstance(p, ProjPoint) else psi(to_tube(p))
        return p if isinstance(p, BoundedPoint) else upsilon_inv(to_tube(p))

    out = convert(point, args.dst)
    conventions = []
    if args.mode == "float":
        conventions.append(f"float-mode tolerance {args.tol}")
    from .domains import BoundedFrame

    if isinstance(frame, BoundedFrame):
        payload = io.point_to_json(args.dst, out.coords, frame.lattice)
    else:
        payload = io.point_to_json(args.dst, out.coords, frame.lattice,
                                   e1=frame.e1, e2=frame.e2, u_basis=frame.u_basis)
    return io.make_report("map-point", payload, conventions=conventions)


def cmd_cusp(args):
    from .parab import CuspFlag, boundary_data

    L = io.lattice_from_json(_read_json(args.gram))
    flag = CuspFlag.from_lattice(L, args.flag)
    bd = boundary_data(flag)
    return io.make_report(
        "cusp",
        {
            "kind": bd.kind,
            "u_dim": bd.u_dim,
            "v_dim": bd.v_dim,
            "f_dim": bd.f_dim,
            "cone": bd.cone,
            "fibration": bd.fibration,
            "dimension_check": bd.u_dim + bd.v_dim + bd.f_dim == flag.n,
        },
    )


def cmd_fan(args):
    from .fan import (
        barycentric_subdivide,
        chart_presentation,
        is_complete,
        is_regular,
        validate_fan,
    )

    f = io.fan_from_json(_read_json(args.fan))
    if args.action == "validate":
        rep = validate_fan(f)
        return io.make_report("fan validate",
                              {"valid": rep.valid, "violations": rep.violations})
    if args.action == "complete":
        rep = validate_fan(f)
        return io.make_report(
            "fan complete",
            {"valid": rep.valid, "complete": bool(rep.valid and is_complete(f))},
        )
    if args.action == "regular":
        out = {}
        for i, c in enumerate(f.cones):
            out[str(i)] = {"rays": [list(r) for r in c.rays], "regular": is_regular(c)}
        return io.make_report("fan regular", out)
    if args.action == "chart":
        if args.cone is None:
            raise UsageError("fan chart needs --cone INDEX")
        try:
            c = f.cones[args.cone]
        except IndexError:
            raise UsageError(f"cone index {args.cone} out of range")
        gens, rels = chart_presentation(c)
        return io.make_report(
            "fan chart",
            {
                "rays": [list(r) for r in c.rays],
                "generators": [list(g) for g in gens],
                "relations": [{"lhs": list(l), "rhs": list(r)} for l, r in rels],
            },
        )
    # subdivide
    selected = [f.cones[args.cone]] if args.cone is not None else list(f.top_cones())
    g = barycentric_subdivide(f, selected)
    return io.make_report("fan subdivide", io.fan_to_json(g))


def cmd_core_decompose(args):
    from .corecone import (
        KernelSpec,
        SelfAdjointCone,
        core_extremes,
        gamma_check,
        support_fan,
    )

    gram = io.matrix_from_json(_read_json(args.gram)["gram"])
    dim = len(gram)
    if args.positivity:
        rho = tuple(Fraction(x) for x in args.positivity.split(","))
    else:
        rho = tuple(1 if i == 0 else 0 for i in range(dim))
    cone = SelfAdjointCone(gram, rho)
    E = core_extremes(cone, args.variant, args.height)
    K = KernelSpec(points=E.points)
    fan, rep = support_fan(K, E, cone)
    from .fan import validate_fan

    results = {
        "variant": args.variant,
        "height": args.height,
        "extreme_points": [list(map(io.rat_to_str, p)) for p in E.points],
        "fan": io.fan_to_json(fan),
        "degenerate_support": rep.degenerate,
        "support_functionals": [list(map(io.rat_to_str, y)) for y in rep.functionals],
        "warnings": rep.warnings,
    }
    certificates = {
        "stability": {"window": args.height, "double_window": 2 * args.height,
                      "stable": E.stable},
        "fan_validity": validate_fan(fan).valid,
    }
    if args.gens:
        gens = [io.matrix_from_json(m) for m in _read_json(args.gens)["generators"]]
        grep = gamma_check(fan, gens, cone, window_bound=2 * args.height)
        results["gamma_check"] = {
            "preserved": grep.preserved,
            "orbits": grep.orbits,
            "excused": grep.excused,
        }
    return io.make_report("core-decompose", results,
                          conventions=list(rep.conventions),
                          certificates=certificates)


def cmd_chern(args):
    from .chern import GradedClass, todd_from_chern, universal_Q

    if args.chern_action == "td":
        n = args.degree
        degs = {f"c{i}": i for i in range(1, n + 1)}
        cs = [GradedClass.gen(f"c{i}", i, degs, n) for i in range(1, n + 1)]
        td = todd_from_chern(cs, n)
        table = {}
        for mono, coeff in td.terms:
            key = "1" if not mono else "*".join(
                f"{g}^{e}" if e > 1 else g for g, e in mono)
            table[key] = coeff
        return io.make_report("chern td", {"degree": n, "coefficients": table})
    q = universal_Q(args.dim, args.rank)
    table = {}
    for (beta, alpha), coeff in q.table:
        key = f"E{list(beta)}|O{list(alpha)}"
        table[key] = coeff
    return io.make_report(
        "chern q-poly",
        {"dim": args.dim, "rank": args.rank, "table": table},
        conventions=["dual-bundle-sign: c_i(T) = (-1)^i c_i(Omega^1)"],
    )


def cmd_hilbert_poly(args):
    from .dimform import hilbert_poly_dual

    P = hilbert_poly_dual(args.n)
    return io.make_report(
        "hilbert-poly",
        {"n": args.n, "coefficients_ascending": list(P.coeffs),
         "value_at_zero": P.evaluate(0)},
        conventions=list(P.conventions),
    )


def cmd_local_density(args):
    from .dimform import local_density

    L = io.lattice_from_json(_read_json(args.gram))
    res = local_density(L, args.p, args.kmax)
    return io.make_report(
        "local-density",
        {
            "p": res.p,
            "alpha_p": res.alpha_p,
            "k_stable": res.k_stable,
            "counts": {str(k): c for k, c in res.counts},
            "stabilization_certificate": True,
        },
    )


def _alpha_inf(args):
    from .dimform import alpha_inf_from_densities

    flagged = False
    if args.alpha_inf is not None:
        alpha = Fraction(args.alpha_inf)
    else:
        if args.densities is None:
            raise UsageError("need --alpha-inf or --densities")
        blob = _read_json(args.densities)
        dens = [Fraction(x) for x in blob["alpha_p"]]
        spn = args.spn
        if spn is None:
            spn = 1
            flagged = True
        alpha = alpha_inf_from_densities(dens, spn_plus=spn)
    return alpha, flagged


def cmd_hm_volume(args):
    from .dimform import hm_volume

    L = io.lattice_from_json(_read_json(args.gram))
    alpha, flagged = _alpha_inf(args)
    vol = hm_volume(L, alpha, spn_flagged=flagged)
    return io.make_report(
        "hm-volume",
        {
            "value": vol.value,
            "rational_part": vol.rational_part,
            "pi_power": vol.pi_power,
            "sqrt_arg": vol.sqrt_arg,
            "alpha_inf": vol.alpha_inf,
        },
        conventions=list(vol.conventions),
    )


def cmd_dim_leading(args):
    from .dimform import hm_volume, leading_dimension
    from .qform import signature as sig

    L = io.lattice_from_json(_read_json(args.gram))
    alpha, flagged = _alpha_inf(args)
    vol = hm_volume(L, alpha, spn_flagged=flagged)
    n = sig(L)[1]
    out = leading_dimension(n, args.ell, vol)
    return io.make_report(
        "dim-leading",
        {
            "ell": args.ell,
            "n": n,
            "hilbert_value": out.hilbert_value,
            "volume": vol.value,
            "leading_value": out.value,
            "note": "boundary error term E(ell) omitted (symbolic only)",
        },
        conventions=list(out.conventions),
    )


def cmd_ramify(args):
    from .cycles import classify_ramification, enumerate_isometries
    from .errors import NoPositiveEigenplane, NotRootOfUnity

    L = io.lattice_from_json(_read_json(args.gram))
    pool = enumerate_isometries(L, args.bound)
    rows = []
    for g in pool:
        row = {
            "matrix": io.matrix_to_json(g.mat),
            "order": g.order,
        }
        if g.order is None:
            row["classification"] = "skipped: infinite order"
        else:
            try:
                rep = classify_ramification(g, L)
                row.update(
                    {
                        "classification": rep.classification,
                        "r_tau": rep.r_tau,
                        "field": rep.field_descriptor,
                        "s_rank": len(rep.s_basis),
                        "s_perp_rank": len(rep.s_perp_basis),
                    }
                )
                if rep.decomposition is not None:
                    row["decomposition_verified"] = rep.decomposition.verified
            except NoPositiveEigenplane:
                row["classification"] = "skipped: no positive eigenplane"
            except NotRootOfUnity:
                row["classification"] = "skipped: not finite order"
        rows.append(row)
    return io.make_report(
        "ramify",
        {"group_size": len(pool), "elements": rows},
        conventions=["eigenvalue-selection: positive imaginary part on the "
                     "signature-(2,*) plane"],
    )


_DISPATCH = {
    "invariants": cmd_invariants,
    "map-point": cmd_map_point,
    "cusp": cmd_cusp,
    "fan": cmd_fan,
    "core-decompose": cmd_core_decompose,
    "chern": cmd_chern,
    "hilbert-poly": cmd_hilbert_poly,
    "local-density": cmd_local_density,
    "hm-volume": cmd_hm_volume,
    "dim-leading": cmd_dim_leading,
    "ramify": cmd_ramify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        thread_cap()
        report = _DISPATCH[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        # argparse errors funnel here; normalize to the usage exit code
        return 2 if e.code not in (0, None) else 0
    except OrthocuspError as e:
        err = io.make_report("error", {"error": type(e).__name__, "detail": str(e)})
        io.emit_report(err, None)
        return 1
    io.emit_report(report, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
