"""Rational polyhedral fans: validation, completeness, charts, orbits.

The running examples are the fans of P^2 and P^1 x P^1 and the A_1
singularity cone((1,0),(1,2)).
"""

from orthocusp.fan import (
    RationalCone,
    barycentric_subdivide,
    chart_presentation,
    dual_cone,
    fan_from_maximal,
    hilbert_basis,
    is_complete,
    is_regular,
    make_regular,
    orbit_record,
    validate_fan,
)

p2 = fan_from_maximal([RationalCone([(1, 0), (0, 1)], 2),
                       RationalCone([(0, 1), (-1, -1)], 2),
                       RationalCone([(-1, -1), (1, 0)], 2)], 2)
print("fan of P^2:", len(p2.cones), "cones")
print("  valid:", validate_fan(p2).valid, " complete:", is_complete(p2))
for c in p2.cones:
    rec = orbit_record(p2, c)
    print(f"  cone {list(c.rays)!s:24} dim {c.dim}  orbit dim {rec.orbit_dim}  "
          f"closure size {len(rec.closure_list)}")

print()
c = RationalCone([(1, 0), (1, 2)], 2)
print("the A_1 cone ((1,0),(1,2)):")
print("  regular:", is_regular(c))
print("  dual cone rays:", list(dual_cone(c).rays))
print("  Hilbert basis of the chart monoid:", list(hilbert_basis(c)))
gens, rels = chart_presentation(c)
print("  chart presentation: generators", list(gens))
for lhs, rhs in rels:
    def mono(exps):
        names = "uvw"
        return "*".join(f"{names[i]}^{e}" if e > 1 else names[i]
                        for i, e in enumerate(exps) if e) or "1"
    print("  relation:", mono(lhs), "=", mono(rhs))

f = fan_from_maximal([c], 2)
g = barycentric_subdivide(f, [c])
print("  barycentric subdivision at (1,1):",
      sorted(t.rays for t in g.top_cones()))
print("  both pieces regular:", all(is_regular(t) for t in g.top_cones()))

print()
rough = fan_from_maximal([RationalCone([(1, 0), (7, 10)], 2)], 2)
smooth = make_regular(rough)
print("resolving cone((1,0),(7,10)) by stellar subdivision:")
print("  ", len(smooth.top_cones()), "regular top cones; fan valid:",
      validate_fan(smooth).valid)
