"""
Skeletons of models and refinement morphisms
============================================

Given an embedding (a fan plus defining Laurent polynomials) and a complete
complex covering the tropicalization, the skeleton assembles one chart per
(face, boundary stratum) pair: the tilted presentation of the face together
with the initial forms of the defining equations there.  Refining the
complex refines the skeleton, and the refinement induces a morphism with
per-chart monomial factorization certificates.
"""

import sys
from pathlib import Path

import adictrop.jsonio as jio
from adictrop import (EmbeddingData, adapted_to, adic_trop_strata,
                      build_skeleton, covers, skeleton_dot, skeleton_morphism)
from adictrop.polyhedra import Cone

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "out"
OUT.mkdir(parents=True, exist_ok=True)
DATA = Path(__file__).parent / "data"


def load(name, reader):
    return reader(jio.loads((DATA / name).read_text()))


# The line x + y + 1 = 0 in the projective plane, with the star-shaped
# complete complex on the same fan.
embedding = load("line_embedding.json", jio.embedding_from_json)
star = load("star_complex.json", jio.complex_from_json)

decision = covers(star, embedding)
print("complex covers the extended tropicalization?", decision.ok)

skeleton = build_skeleton(embedding, star)
print(f"skeleton: {len(skeleton.charts)} charts over "
      f"{len(skeleton.complex.faces)} faces")

# The non-empty evaluated charts are the strata of the adic tropicalization.
# For the line: the vertex chart plus one chart per boundary intersection.
print("non-empty strata and their initial forms:")
for row in adic_trop_strata(skeleton):
    forms = [g.to_string(["x", "y"]) for g in row.forms]
    print(f"  face {row.face_index} stratum {row.stratum}: {forms}")
(OUT / "line_skeleton.json").write_text(
    jio.canonical_json(jio.skeleton_to_json(skeleton)))
(OUT / "line_skeleton.dot").write_text(skeleton_dot(skeleton))
print(f"  wrote {OUT / 'line_skeleton.json'} and .dot")

# Adapted subcomplexes: restrict the skeleton to a union of faces.
ray = Cone.from_rays([(1, 0)], 2).as_polyhedron()
adapted = adapted_to(skeleton, [ray])
if adapted is not None:
    sub, restricted = adapted
    print(f"adapted to the (1,0) ray: {len(sub.faces)} faces, "
          f"{len(restricted.charts)} charts")

# Morphisms between skeletons over the same embedding: over the rank-1
# torus, the line complex with cuts {0,1} refines the one with cut {0}.
coarse_delta = load("line_cut_at_0.json", jio.complex_from_json)
fine_delta = load("line_cut_at_0_and_1.json", jio.complex_from_json)
torus = EmbeddingData.of(coarse_delta.fan, [])
fine = build_skeleton(torus, fine_delta)
coarse = build_skeleton(torus, coarse_delta)
morphism = skeleton_morphism(fine, coarse)
print("face assignment fine -> coarse:", morphism.refinement.assignment)
arrow = morphism.arrow_for(fine.charts[0].face_index)
print("one arrow's factorization table:", arrow.table)
(OUT / "line_morphism.json").write_text(
    jio.canonical_json(jio.morphism_to_json(morphism)))
(OUT / "line_morphism.dot").write_text(jio.morphism_dot(morphism))
print(f"  wrote {OUT / 'line_morphism.json'} and .dot")
