"""
Extended complexes, symbolic face families, and refinement
==========================================================

An extended complex is a finite (or finitely-presented infinite) collection
of admissible polyhedra glued along faces.  Infinite collections enter
through a rank-1 family rule such as [1/(n+1), 1/n]; the library reasons
about the whole family symbolically, detecting accumulation points and loss
of local finiteness that no finite truncation can see.
"""

import sys
from pathlib import Path

import adictrop.jsonio as jio
from adictrop import (adjacency_components, common_refinement,
                      detect_accumulation, is_complete, is_locally_finite,
                      refinement_map, validate_complex)
from adictrop.errors import FamilyNotSupported

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "out"
OUT.mkdir(parents=True, exist_ok=True)
DATA = Path(__file__).parent / "data"


def load(name):
    return jio.complex_from_json(jio.loads((DATA / name).read_text()))


# The harmonic family: faces {0} and [1/(n+1), 1/n] for every n >= 1.  Its
# support is [0,1], but no neighbourhood of 0 meets only finitely many faces.
delta = load("harmonic_family.json")
print("family rule:", delta.family.rule)
report = validate_complex(delta.fan, delta.finite_parts, delta.family)
print("structurally valid complex?", report.ok)
print("locally finite?", is_locally_finite(delta))
print("accumulation point:", detect_accumulation(delta.family))
components = adjacency_components(delta)
print(f"adjacency components ({len(components)}):", components)
try:
    is_complete(delta)
except FamilyNotSupported as exc:
    print("completeness undecided for the infinite family:", exc)
(OUT / "harmonic_adjacency.dot").write_text(jio.adjacency_dot(delta))
print(f"  wrote {OUT / 'harmonic_adjacency.dot'}")

# Finite complete complexes of the line, cut at different points.  Their
# common refinement carries refinement maps back to each input.
coarse = load("line_cut_at_0.json")
finer = load("line_cut_at_0_and_1.json")
print("complete?", is_complete(coarse), "and", is_complete(finer))
refined = common_refinement(coarse, finer)
print("common refinement has", len(refined.faces), "faces")
rmap = refinement_map(refined, coarse)
print("face assignment into the coarse complex:", rmap.assignment)

# Refinement is idempotent: refining a complex with itself gives it back,
# face for face, because every face representation is canonical.
assert common_refinement(refined, refined) == refined
print("refinement is idempotent on canonical face sets")
(OUT / "refined_line.json").write_text(
    jio.canonical_json(jio.complex_to_json(refined)))
(OUT / "refined_line.dot").write_text(jio.incidence_dot(refined))
print(f"  wrote {OUT / 'refined_line.json'} and .dot")
