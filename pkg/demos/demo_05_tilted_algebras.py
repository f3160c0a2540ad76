"""
Tilted algebras and their special fibers
========================================

For an admissible polyhedron P and a level denominator D, the tilted algebra
is the subring of monomials t^(g/D) x^u with g/D + <u, w> >= 0 for every w
in P.  Its minimal monomial generators come from the Hilbert basis of a dual
cone one dimension up; the special fiber is described by which generators
vanish and which products collapse modulo the maximal ideal.
"""

import sys
from fractions import Fraction as F
from pathlib import Path

import adictrop.jsonio as jio
from adictrop import Polyhedron, special_fiber_relations, tilted_algebra
from adictrop.errors import DenominatorMismatch

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "out"
OUT.mkdir(parents=True, exist_ok=True)
DATA = Path(__file__).parent / "data"

# The unit interval P = [0,1] at denominator 1: three generators
# x, t*x^-1, and the level parameter t itself.
p = jio.polyhedron_from_json(jio.loads((DATA / "unit_interval.json").read_text()))
pres = tilted_algebra(p, denominator=1)
print("P = [0,1], D = 1")
print("generators (exponent u, level g/D):")
for u, level in pres.generators:
    print(f"  u={u}  level={level}")

rel = special_fiber_relations(pres)
print("generators vanishing on the special fiber:", rel.generator_vanishing)
print("monomial identities:", rel.identities)
print("products collapsing mod the maximal ideal:", rel.product_vanishing)
(OUT / "unit_interval_presentation.json").write_text(jio.canonical_json(
    {"presentation": jio.presentation_to_json(pres),
     "relations": jio.relations_to_json(rel)}))
print(f"  wrote {OUT / 'unit_interval_presentation.json'}")

# Vertices must be D-integral: [0, 1/2] needs denominator 2.
half = Polyhedron.from_halfspaces([((1,), F(0)), ((-1,), F(-1, 2))], 1)
try:
    tilted_algebra(half, denominator=1)
except DenominatorMismatch as exc:
    print("P = [0,1/2] at D=1 ->", exc)
pres2 = tilted_algebra(half, denominator=2)
print("P = [0,1/2] at D=2 has", len(pres2.generators), "generators:")
for u, level in pres2.generators:
    print(f"  u={u}  level={level}")

# Monomial membership is exact: t^1*x^-2 = (t^(1/2)*x^-1)^2 lies in the
# algebra, while a bare x^-1 fails integrality at every w > 0 in P.
print("contains t^1*x^-2?", pres2.contains_monomial((-2,), F(1)))
print("contains t^0*x^-1?", pres2.contains_monomial((-1,), F(0)))

# A two-dimensional example: the triangle conv{(0,0),(1,0),(0,1)}.
triangle = Polyhedron.from_halfspaces(
    [((1, 0), F(0)), ((0, 1), F(0)), ((-1, -1), F(-1))], 2)
tri = tilted_algebra(triangle, denominator=1)
print(f"triangle presentation: {len(tri.generators)} generators")
(OUT / "triangle_presentation.json").write_text(
    jio.canonical_json(jio.presentation_to_json(tri)))
print(f"  wrote {OUT / 'triangle_presentation.json'}")
