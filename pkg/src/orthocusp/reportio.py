"""Canonical JSON serialization for all file formats and reports.

Rationals are serialized as strings ("p/q" or plain integers) so round
trips are bit-exact; emitted JSON is byte-deterministic (sorted keys,
fixed separators, trailing newline).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import UsageError
from .gaussian import GaussianRational
from .qform import QuadraticLattice


def rat_to_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise UsageError(f"expected rational string, got {s!r}")
    return Fraction(s)


def matrix_to_json(M):
    return [[rat_to_str(x) for x in row] for row in M]


def matrix_from_json(rows):
    return tuple(tuple(rat_from_str(x) for x in row) for row in rows)


def vector_to_json(v):
    return [rat_to_str(x) for x in v]


def vector_from_json(xs):
    return tuple(rat_from_str(x) for x in xs)


def lattice_to_json(L: QuadraticLattice) -> dict:
    return {"gram": matrix_to_json(L.gram)}


def lattice_from_json(blob: dict) -> QuadraticLattice:
    if "gram" not in blob:
        raise UsageError("lattice file must contain a 'gram' matrix")
    return QuadraticLattice(matrix_from_json(blob["gram"]))


def complex_to_json(z):
    if isinstance(z, GaussianRational):
        return [rat_to_str(z.re), rat_to_str(z.im)]
    return [_float_str(z.real), _float_str(z.imag)]


def complex_from_json(pair, mode="exact"):
    re, im = pair
    if mode == "exact":
        return GaussianRational(rat_from_str(re), rat_from_str(im))
    return complex(float(Fraction(re) if isinstance(re, str) and "/" in re else float(re)),
                   float(Fraction(im) if isinstance(im, str) and "/" in im else float(im)))


def point_to_json(model: str, coords, frame_lattice: QuadraticLattice,
                  e1=None, e2=None, u_basis=None) -> dict:
    frame = lattice_to_json(frame_lattice)
    if e1 is not None:
        frame["e1"] = vector_to_json(e1)
        frame["e2"] = vector_to_json(e2)
    if u_basis is not None:
        frame["u_basis"] = [vector_to_json(u) for u in u_basis]
    return {
        "model": model,
        "coords": [complex_to_json(z) for z in coords],
        "frame": frame,
    }


def point_from_json(blob: dict, mode="exact"):
    """Returns (model, coords, lattice, split).

    split is None or (e1, e2, u_basis_or_None), all exact vectors.
    """
    model = blob.get("model")
    if model not in ("projective", "tube", "bounded"):
        raise UsageError("point model must be projective, tube, or bounded")
    coords = tuple(complex_from_json(p, mode) for p in blob["coords"])
    frame = lattice_from_json(blob["frame"])
    split = None
    if "e1" in blob["frame"]:
        ub = None
        if "u_basis" in blob["frame"]:
            ub = tuple(vector_from_json(u) for u in blob["frame"]["u_basis"])
        split = (vector_from_json(blob["frame"]["e1"]),
                 vector_from_json(blob["frame"]["e2"]), ub)
    return model, coords, frame, split


def fan_to_json(f) -> dict:
    return {
        "rank": f.rank,
        "cones": [{"rays": [list(r) for r in c.rays]} for c in f.cones],
    }


def fan_from_json(blob: dict):
    from .fan import Fan, RationalCone

    rank = int(blob["rank"])
    cones = [RationalCone([tuple(int(x) for x in r) for r in c["rays"]], rank)
             for c in blob["cones"]]
    return Fan(cones, rank)


def _float_str(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0
    return repr(float(x))


def normalize_value(v):
    """Recursively convert a result payload into canonical JSON scalars."""
    if isinstance(v, Fraction):
        return rat_to_str(v)
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return _float_str(v)
    if isinstance(v, GaussianRational):
        return complex_to_json(v)
    if isinstance(v, complex):
        return complex_to_json(v)
    if isinstance(v, dict):
        return {str(k): normalize_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [normalize_value(x) for x in v]
    return v


def make_report(command: str, results, conventions=(), certificates=None) -> dict:
    report = {
        "command": command,
        "conventions": sorted(conventions),
        "results": normalize_value(results),
    }
    if certificates is not None:
        report["certificates"] = normalize_value(certificates)
    return report


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def emit_report(report: dict, path=None) -> str:
    text = dumps_canonical(report)
    if path is None or path == "-":
        import sys

        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    return text
