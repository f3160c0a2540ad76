"""
Tropical hypersurfaces, initial forms, and the membership polyhedron
====================================================================

trop(f) evaluates min over the terms of val(coefficient) + <exponent, w>;
the tropical hypersurface is the corner locus where that minimum is attained
at least twice.  This demo computes the tropical line of f = x + y + 1,
inspects initial forms on and off the locus, and shows the membership
polyhedron {w : f is w-integral}.
"""

import sys
from fractions import Fraction as F
from pathlib import Path

import adictrop.jsonio as jio
from adictrop import (hypersurface_trop, initial_form, is_integral_at,
                      monomial_polyhedron, parse_poly, trop_eval)

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "out"
OUT.mkdir(parents=True, exist_ok=True)

f = parse_poly("x + y + 1")
print("f =", f.to_string(["x", "y"]))

# Tropical evaluation returns the exact minimum and every exponent attaining
# it.  At the origin all three terms tie.
value, argmin = trop_eval(f, (F(0), F(0)))
print("trop(f)(0,0) =", value, "attained by exponents", argmin)

# The corner locus of the tropical line: the origin plus rays in directions
# (1,0), (0,1), (-1,-1), here clipped to the box [-3,3]^2.
cells = hypersurface_trop(f, box=((F(-3), F(-3)), (F(3), F(3))))
print(f"corner locus has {len(cells)} closed cells:")
for cell in cells:
    rep = cell.vrep()
    print(f"  dim {cell.dim}: vertices {rep.vertices} rays {rep.rays}")
(OUT / "tropical_line_cells.json").write_text(jio.canonical_json(
    {"poly": jio.poly_to_json(f), "cells": [jio.cell_to_json(c) for c in cells]}))
(OUT / "tropical_line_cells.dot").write_text(jio.faces_dot(cells))
print(f"  wrote {OUT / 'tropical_line_cells.json'} and .dot")

# Initial forms: non-monomial exactly on the tropical hypersurface.
on = initial_form(f, (F(0), F(0)))
off = initial_form(f, (F(5), F(7)))
print("initial form at (0,0):", on.to_string(["x", "y"]),
      "-> monomial?", on.is_monomial)
print("initial form at (5,7):", off.to_string(["x", "y"]),
      "-> monomial?", off.is_monomial)

# Valuations in coefficients shift the picture.  For g = x + t*y the locus is
# the line where val(x-term) = val(y-term), i.e. w1 = w2 + 1.
g = parse_poly("x + t*y")
gcells = hypersurface_trop(g, box=((F(-2), F(-2)), (F(2), F(2))))
print("g = x + t*y corner locus dims:", [c.dim for c in gcells])

# Membership lemma: f lies in the w-tilted integral subring exactly when w is
# in monomial_polyhedron(f) = {w : trop-value of every term >= 0 ... } -- the
# polyhedron cut out by val(a_u) + <u, w> >= 0 for all terms u.
h = parse_poly("t^-1*x + y")
mp = monomial_polyhedron(h)
print("membership polyhedron of t^-1*x + y:", mp.facets)
for w in [(F(2), F(0)), (F(0), F(-1))]:
    print(f"  w={w}: integral? {is_integral_at(h, w)}  "
          f"in polyhedron? {mp.contains(w)}")
