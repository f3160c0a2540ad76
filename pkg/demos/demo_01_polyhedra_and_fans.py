"""
Admissible polyhedra, fans, and lattice semigroups
==================================================

Everything in this library is exact: polyhedra live in Q^n, are stored by a
canonical irredundant H-representation, and two polyhedra are equal as Python
objects exactly when they are equal as point sets.  This demo builds a few
polyhedra, checks admissibility against a fan, and computes the Hilbert basis
of a dual cone, writing each artifact as canonical JSON.
"""

import sys
from fractions import Fraction as F
from pathlib import Path

import adictrop.jsonio as jio
from adictrop import (Cone, Fan, Polyhedron, dual_cone, hilbert_basis,
                      is_admissible, recession_cone, semigroup_generators)

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "out"
OUT.mkdir(parents=True, exist_ok=True)


def save(name, text):
    (OUT / name).write_text(text)
    print(f"  wrote {OUT / name}")


# A polyhedron from halfspaces <normal, x> >= bound.  Canonicalization removes
# the redundant third constraint and sorts the facets deterministically.
triangle = Polyhedron.from_halfspaces(
    [((1, 0), F(0)), ((0, 1), F(0)), ((1, 1), F(0)), ((-1, -1), F(-2))], 2)
print("triangle facets:", triangle.facets)
print("triangle vertices:", triangle.vrep().vertices)
save("triangle.json", jio.canonical_json(jio.polyhedron_to_json(triangle)))

# Equal point sets compare equal even when built from different descriptions.
same = Polyhedron.from_halfspaces(
    [((0, 1), F(0)), ((1, 0), F(0)), ((-1, -1), F(-2)), ((-1, -1), F(-3))], 2)
assert same == triangle
print("two descriptions, one canonical polyhedron:", same == triangle)

# The fan of the projective plane: rays (1,0), (0,1), (-1,-1) plus the three
# two-dimensional cones they span, closed under faces.
rays = [(1, 0), (0, 1), (-1, -1)]
cones = [Cone.from_rays([r], 2) for r in rays]
cones += [Cone.from_rays([rays[i], rays[j]], 2)
          for i, j in [(0, 1), (1, 2), (0, 2)]]
fan = Fan.from_cones(cones)
print(f"fan has {len(fan)} cones (face closure added the origin)")
save("projective_plane_fan.json", jio.canonical_json(jio.fan_to_json(fan)))

# A polyhedron is admissible for a fan when its recession cone is a union of
# fan cones; admissibility is what lets finite polyhedra compactify correctly.
half_strip = Polyhedron.from_halfspaces(
    [((1, 0), F(0)), ((0, 1), F(0)), ((0, -1), F(-1))], 2)
print("half strip admissible for the fan?", is_admissible(half_strip, fan).ok)
print("  its recession cone:", recession_cone(half_strip).rays)

# cone((1,0),(1,1)) sits strictly inside the quadrant cone: a proper subcone
# is not a union of fan cones, so this one is rejected with a reason.
skew = Polyhedron.from_halfspaces([((0, 1), F(0)), ((1, -1), F(0))], 2)
verdict = is_admissible(skew, fan)
print("skew cone admissible?", verdict.ok, "--", verdict.reason)

# Hilbert bases: the unique minimal generating set of the lattice points of a
# pointed rational cone.  For the dual of cone((1,0),(1,2)) the basis needs an
# interior vector -- generators of the dual's rays alone do not suffice.
sigma = Cone.from_rays([(1, 0), (1, 2)], 2)
sigma_dual = dual_cone(sigma)
basis = hilbert_basis(sigma_dual)
print("dual cone rays:", sigma_dual.rays)
print("Hilbert basis of the dual:", basis)

# semigroup_generators handles non-pointed duals too, splitting off the
# lineality part as +/- a lattice basis.
halfplane = Cone.from_rays([(1, 0)], 2)
gens = semigroup_generators(dual_cone(halfplane))
print("semigroup generators for the dual of a ray:",
      "lineality", gens.lineality, "+ lifted", gens.lifted)
save("hilbert_basis.json", jio.canonical_json(
    {"cone": [list(r) for r in sigma.rays],
     "dual_rays": [list(r) for r in sigma_dual.rays],
     "hilbert_basis": [list(v) for v in basis]}))
