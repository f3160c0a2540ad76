"""
Extended tropicalization: closures in the toric boundary
========================================================

A fan Sigma partially compactifies Q^n: each cone sigma contributes a
boundary stratum Q^n / span(sigma), and a point of the extended space is a
stratum index plus coordinates in that quotient.  The closure of an
admissible polyhedron P picks up a piece on every stratum whose cone meets
the recession cone of P in the right way.  This demo walks the closure of a
quadrant-shaped polyhedron through the fan of the projective plane.
"""

import sys
from fractions import Fraction as F
from pathlib import Path

import adictrop.jsonio as jio
from adictrop import (Cone, ExtendedPoint, Fan, Polyhedron, closure_strata,
                      extended_contains, initial_form_on_stratum, parse_poly,
                      stratum_lattice)

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "out"
OUT.mkdir(parents=True, exist_ok=True)
DATA = Path(__file__).parent / "data"

fan = jio.fan_from_json(jio.loads((DATA / "projective_plane_fan.json").read_text()))
print(f"ambient fan: {len(fan)} cones in Q^2")

# Shifted quadrant P = (1,2) + cone(e1, e2).  Its recession cone is the full
# quadrant, so the closure reaches the two ray strata and the quadrant's own
# zero-dimensional stratum.
p = Polyhedron.from_halfspaces([((1, 0), F(1)), ((0, 1), F(2))], 2)
closure = closure_strata(p, fan)
print("closure meets", len(closure.strata), "strata:")
for sigma, piece in closure.strata:
    print(f"  stratum {sigma} (cone rays {fan.cones[sigma].rays}): "
          f"dim {piece.dim} piece in Q^{piece.ambient}")

# Membership of extended points is exact.  At the stratum of ray (1,0) the
# quotient coordinate is y; the piece there is y >= 2.
ray_x = fan.index_of(Cone.from_rays([(1, 0)], 2))
print("contains (ray_x stratum, y=5):",
      extended_contains(closure, ExtendedPoint(ray_x, (F(5),))))
print("contains (ray_x stratum, y=0):",
      extended_contains(closure, ExtendedPoint(ray_x, (F(0),))))

# Stratum lattices say which monomials survive on a stratum: exponents must
# pair to zero with the cone's span.  On the ray_x stratum only powers of y
# survive; initial forms there are taken inside that sublattice.
lattice = stratum_lattice(fan, ray_x)
print("surviving coordinates on the ray_x stratum:", lattice.quotient_rank)
g = parse_poly("y + 1", variables=("x", "y"))
form = initial_form_on_stratum(g, ExtendedPoint(ray_x, (F(0),)), lattice)
print("initial form of y + 1 at y=0 on that stratum:", form.to_string(["y"]))

# A polynomial with an x term does not restrict to this stratum; the library
# refuses rather than silently dropping terms.
try:
    initial_form_on_stratum(parse_poly("x + y + 1"),
                            ExtendedPoint(ray_x, (F(0),)), lattice)
except Exception as exc:
    print("x + y + 1 on the same stratum ->", type(exc).__name__)

save = OUT / "closure_strata.json"
save.write_text(jio.canonical_json(
    {"polyhedron": jio.polyhedron_to_json(p),
     "strata": [[sigma, jio.polyhedron_to_json(piece)]
                for sigma, piece in closure.strata]}))
print(f"  wrote {save}")
