"""Admissible polyhedral geometry over Q, with canonical representations.

A polyhedron lives in Q^n and is stored by a canonical irredundant
H-representation: a unique reduced equality system for its affine hull
plus the facet inequalities reduced modulo that system, all with primitive
integer normals and sorted deterministically.  Equal point sets therefore
compare equal as Python objects, which is what makes set-level equality of
complexes decidable by syntactic comparison downstream.

Cones are polyhedra whose bounds are all zero; fans are finite collections
of pointed cones closed under faces and intersecting in common faces.

No floats anywhere: bounds are `fractions.Fraction`, normals are ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from . import lp
from .errors import EmptyPolyhedron, NotAFan, NotPointed

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]
HalfSpacePair = tuple[IntVector, Fraction]


@dataclass(frozen=True)
class HalfSpace:
    """Closed halfspace {x : normal . x >= bound} with primitive integer normal."""

    normal: IntVector
    bound: Fraction

    def __post_init__(self):
        normal = tuple(int(v) for v in self.normal)
        if not normal or all(v == 0 for v in normal):
            raise ValueError("halfspace normal must be a nonzero integer vector")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "bound", la.frac(self.bound))

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return la.dot(self.normal, x)

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self.evaluate(x) >= self.bound


@dataclass(frozen=True)
class VRep:
    """Minimal V-representation of a pointed polyhedron."""

    vertices: tuple[Vector, ...]
    rays: tuple[IntVector, ...]


def _normalize_pair(normal: Sequence, bound) -> HalfSpacePair | None:
    """Primitive-integer form of one inequality; None if trivially true."""
    bound = la.frac(bound)
    fr = [la.frac(v) for v in normal]
    if all(v == 0 for v in fr):
        if bound > 0:
            raise EmptyPolyhedron("inequality 0 >= positive bound")
        return None
    prim = la.primitive(fr)
    # primitive() preserves direction, so the scale factor is positive
    scale = None
    for p, f in zip(prim, fr):
        if f != 0:
            scale = Fraction(p) / f
            break
    return prim, bound * scale


def _dd_cone(normals: Sequence[IntVector], ambient: int) -> tuple[tuple[IntVector, ...], tuple[IntVector, ...]]:
    """Double description: generators of {x : n . x >= 0 for all n}.

    Returns (lineality basis, extreme rays modulo lineality), both as
    primitive integer vectors in canonical order.  Incremental insertion
    with the combinatorial adjacency test on zero sets.
    """
    lineality: list[Vector] = [tuple(Fraction(1 if i == j else 0) for j in range(ambient))
                               for i in range(ambient)]
    rays: list[Vector] = []
    zero_sets: list[set[int]] = []

    for idx, n in enumerate(normals):
        lin_evals = [la.dot(n, l) for l in lineality]
        if any(e != 0 for e in lin_evals):
            pos = next(i for i, e in enumerate(lin_evals) if e != 0)
            pivot = lineality[pos]
            pe = lin_evals[pos]
            if pe < 0:
                pivot = tuple(-x for x in pivot)
                pe = -pe
            new_lin = []
            for i, l in enumerate(lineality):
                if i == pos:
                    continue
                e = lin_evals[i]
                new_lin.append(la.vsub(l, la.vscale(Fraction(e, 1) / pe, pivot)) if e != 0 else l)
            lineality = new_lin
            rays = [la.vsub(r, la.vscale(la.dot(n, r) / pe, pivot)) for r in rays]
            zero_sets = [z | {idx} for z in zero_sets]
            rays.append(pivot)
            zero_sets.append(set(range(idx)))
            continue
        evals = [la.dot(n, r) for r in rays]
        if all(e >= 0 for e in evals):
            for i, e in enumerate(evals):
                if e == 0:
                    zero_sets[i].add(idx)
            continue
        plus = [i for i, e in enumerate(evals) if e > 0]
        zero = [i for i, e in enumerate(evals) if e == 0]
        minus = [i for i, e in enumerate(evals) if e < 0]
        new_rays: list[Vector] = [rays[i] for i in plus] + [rays[i] for i in zero]
        new_zero: list[set[int]] = [set(zero_sets[i]) for i in plus] + \
                                   [zero_sets[i] | {idx} for i in zero]
        for p in plus:
            for m in minus:
                common = zero_sets[p] & zero_sets[m]
                adjacent = True
                for o in range(len(rays)):
                    if o != p and o != m and common <= zero_sets[o]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = la.vsub(la.vscale(evals[p], rays[m]), la.vscale(evals[m], rays[p]))
                if la.is_zero_vector(combo):
                    continue
                new_rays.append(combo)
                new_zero.append(common | {idx})
        # dedupe parallel rays produced by degenerate adjacencies
        rays, zero_sets = [], []
        seen: dict[IntVector, int] = {}
        for r, z in zip(new_rays, new_zero):
            key = la.primitive(r)
            if key in seen:
                zero_sets[seen[key]] |= z
            else:
                seen[key] = len(rays)
                rays.append(r)
                zero_sets.append(set(z))

    lin_rows, _ = la.rref(lineality)
    lin_out = tuple(sorted(la.sign_normalized(la.primitive(r)) for r in lin_rows))
    ray_out = tuple(sorted(la.primitive(r) for r in rays))
    return lin_out, ray_out


def _constraints(eqs: Sequence[HalfSpacePair], ineqs: Sequence[HalfSpacePair]):
    ge = [([Fraction(v) for v in n], b) for n, b in ineqs]
    eq = [([Fraction(v) for v in n], b) for n, b in eqs]
    return ge, eq


@dataclass(frozen=True)
class Polyhedron:
    """Canonical closed rational polyhedron in Q^ambient.

    `equalities` is the reduced affine-hull system, `facets` the
    irredundant inequalities modulo it; both use primitive integer
    normals and are sorted.  The empty polyhedron is a first-class value
    with no constraints stored.
    """

    ambient: int
    is_empty: bool
    equalities: tuple[HalfSpacePair, ...]
    facets: tuple[HalfSpacePair, ...]

    def __post_init__(self):
        # subclasses refine this; defining it here makes the generated
        # __init__ dispatch to overrides
        pass

    def as_polyhedron(self) -> "Polyhedron":
        """The same point set as a plain Polyhedron (for cross-class equality)."""
        if type(self) is Polyhedron:
            return self
        return Polyhedron(self.ambient, self.is_empty, self.equalities, self.facets)

    # -- construction ------------------------------------------------------

    @classmethod
    def _make_empty(cls, ambient: int) -> "Polyhedron":
        return cls(ambient=ambient, is_empty=True, equalities=(), facets=())

    @classmethod
    def empty(cls, ambient: int) -> "Polyhedron":
        return cls._make_empty(ambient)

    @classmethod
    def from_halfspaces(cls, halfspaces: Iterable, ambient: int) -> "Polyhedron":
        """Canonicalize an H-representation.

        Accepts HalfSpace objects or (normal, bound) pairs.  Detects
        emptiness, extracts the affine hull (implicit equalities), reduces
        the remaining inequalities modulo it, and removes redundancy by
        exact LP.
        """
        pairs: list[HalfSpacePair] = []
        try:
            for h in halfspaces:
                if isinstance(h, HalfSpace):
                    normal, bound = h.normal, h.bound
                else:
                    normal, bound = h
                if len(tuple(normal)) != ambient:
                    raise ValueError("normal arity does not match ambient rank")
                p = _normalize_pair(normal, bound)
                if p is not None:
                    pairs.append(p)
        except EmptyPolyhedron:
            return cls._make_empty(ambient)

        # drop weaker duplicates
        best: dict[IntVector, Fraction] = {}
        for n, b in pairs:
            if n not in best or b > best[n]:
                best[n] = b
        pairs = sorted(best.items())

        ge, _ = _constraints((), pairs)
        if lp.feasible_point(ge=ge) is None:
            return cls._make_empty(ambient)

        # implicit equalities: first try a single strictly-interior LP
        eq_idx: list[int] = []
        if pairs:
            strict = [(c, b) for c, b in ge]
            if lp.feasible_point(strict=strict) is None:
                for i, (n, b) in enumerate(pairs):
                    res = lp.maximize([Fraction(v) for v in n], ge=ge)
                    if res.status == lp.OPTIMAL and res.value == b:
                        eq_idx.append(i)

        eq_rows = [tuple(Fraction(v) for v in pairs[i][0]) + (pairs[i][1],) for i in eq_idx]
        reduced_eq, pivots = la.rref(eq_rows)
        equalities = tuple(sorted(
            _normalize_pair(row[:ambient], row[ambient]) for row in reduced_eq))

        # reduce inequalities modulo the affine hull
        ineqs: dict[IntVector, Fraction] = {}
        eq_set = set(eq_idx)
        for i, (n, b) in enumerate(pairs):
            if i in eq_set:
                continue
            u = [Fraction(v) for v in n]
            g = b
            for row, p in zip(reduced_eq, pivots):
                if p < ambient and u[p] != 0:
                    c = u[p]
                    u = [x - c * y for x, y in zip(u, row[:ambient])]
                    g = g - c * row[ambient]
            norm = _normalize_pair(u, g)
            if norm is None:
                continue
            un, gn = norm
            if un not in ineqs or gn > ineqs[un]:
                ineqs[un] = gn

        # irredundancy by exact LP, fixed processing order
        current = dict(sorted(ineqs.items()))
        for key in sorted(ineqs):
            others = [(n, b) for n, b in current.items() if n != key]
            ge_o, eq_o = _constraints(equalities, others)
            res = lp.minimize([Fraction(v) for v in key], ge=ge_o, eq=eq_o)
            if res.status == lp.OPTIMAL and res.value >= current[key]:
                del current[key]
        facets = tuple(sorted(current.items()))
        return cls(ambient=ambient, is_empty=False, equalities=equalities, facets=facets)

    @classmethod
    def from_generators(cls, vertices: Sequence[Sequence], rays: Sequence[Sequence] = (),
                        ambient: int | None = None) -> "Polyhedron":
        """Polyhedron conv(vertices) + cone(rays), via duality."""
        vertices = [la.vec(v) for v in vertices]
        rays = [la.vec(r) for r in rays]
        if ambient is None:
            if not vertices and not rays:
                raise ValueError("ambient rank required for generatorless input")
            ambient = len(vertices[0]) if vertices else len(rays[0])
        if not vertices:
            return cls._make_empty(ambient)
        dual_normals = [la.primitive(tuple(v) + (Fraction(1),)) for v in vertices]
        dual_normals += [la.primitive(tuple(r) + (Fraction(0),)) for r in rays if not la.is_zero_vector(r)]
        lin, drs = _dd_cone(sorted(set(dual_normals)), ambient + 1)
        halfspaces: list[HalfSpacePair] = []
        for u in drs:
            if all(v == 0 for v in u[:ambient]):
                continue
            halfspaces.append((u[:ambient], Fraction(-u[ambient])))
        for u in lin:
            if all(v == 0 for v in u[:ambient]):
                continue
            halfspaces.append((u[:ambient], Fraction(-u[ambient])))
            halfspaces.append((tuple(-v for v in u[:ambient]), Fraction(u[ambient])))
        if not halfspaces:
            return cls(ambient=ambient, is_empty=False, equalities=(), facets=())
        return cls.from_halfspaces(halfspaces, ambient)

    @classmethod
    def full_space(cls, ambient: int) -> "Polyhedron":
        return cls(ambient=ambient, is_empty=False, equalities=(), facets=())

    @classmethod
    def single_point(cls, coords: Sequence) -> "Polyhedron":
        coords = la.vec(coords)
        return cls.from_generators([coords], ambient=len(coords))

    # -- views -------------------------------------------------------------

    @property
    def halfspaces(self) -> tuple[HalfSpace, ...]:
        """Full canonical list: equality pairs expanded plus facets, sorted."""
        pairs: list[HalfSpacePair] = list(self.facets)
        for n, b in self.equalities:
            pairs.append((n, b))
            pairs.append((tuple(-v for v in n), -b))
        return tuple(HalfSpace(n, b) for n, b in sorted(pairs))

    @property
    def halfspace_pairs(self) -> tuple[HalfSpacePair, ...]:
        return tuple((h.normal, h.bound) for h in self.halfspaces)

    @cached_property
    def dim(self) -> int:
        if self.is_empty:
            return -1
        return self.ambient - la.rank([la.vec(n) for n, _ in self.equalities])

    @cached_property
    def lineality_basis(self) -> tuple[IntVector, ...]:
        if self.is_empty:
            return ()
        normals = [la.vec(n) for n, _ in self.equalities] + [la.vec(n) for n, _ in self.facets]
        if not normals:
            return la.kernel_basis([], self.ambient) if self.ambient else ()
        return la.kernel_basis(normals, self.ambient)

    @property
    def is_pointed(self) -> bool:
        return not self.is_empty and len(self.lineality_basis) == 0

    @property
    def is_bounded(self) -> bool:
        if self.is_empty:
            return True
        return self.recession_cone().dim == 0

    # -- point queries ------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = la.vec(x)
        if len(x) != self.ambient:
            raise ValueError("point arity does not match ambient rank")
        return (all(la.dot(n, x) == b for n, b in self.equalities)
                and all(la.dot(n, x) >= b for n, b in self.facets))

    def maximize(self, objective: Sequence) -> lp.LPResult:
        ge, eq = _constraints(self.equalities, self.facets)
        return lp.maximize([la.frac(c) for c in objective], ge=ge, eq=eq)

    def minimize(self, objective: Sequence) -> lp.LPResult:
        ge, eq = _constraints(self.equalities, self.facets)
        return lp.minimize([la.frac(c) for c in objective], ge=ge, eq=eq)

    # -- geometry ------------------------------------------------------------

    @cached_property
    def _vrep(self) -> VRep:
        if self.is_empty:
            raise EmptyPolyhedron("empty polyhedron has no V-representation")
        if not self.is_pointed:
            raise NotPointed("V-representation requires a pointed polyhedron")
        normals = [n + (-b,) for n, b in self.facets]
        for n, b in self.equalities:
            normals.append(n + (-b,))
            normals.append(tuple(-v for v in n) + (b,))
        normals.append((0,) * self.ambient + (1,))
        normals = [la.primitive(n) for n in normals]
        lin, rays = _dd_cone(sorted(set(normals)), self.ambient + 1)
        if lin:
            raise NotPointed("V-representation requires a pointed polyhedron")
        vertices = []
        recession = []
        for r in rays:
            lam = r[self.ambient]
            if lam > 0:
                vertices.append(tuple(Fraction(v, lam) for v in r[:self.ambient]))
            elif all(v == 0 for v in r[:self.ambient]):
                continue
            else:
                recession.append(la.primitive(r[:self.ambient]))
        return VRep(tuple(sorted(vertices)), tuple(sorted(recession)))

    def vrep(self) -> VRep:
        """Minimal vertices and primitive rays (pointed polyhedra only)."""
        return self._vrep

    def recession_cone(self) -> "Cone":
        """The cone of unbounded directions: same normals, all bounds zero."""
        if self.is_empty:
            raise EmptyPolyhedron("empty polyhedron has no recession cone")
        zeroed = [(n, Fraction(0)) for n, _ in self.facets]
        for n, _ in self.equalities:
            zeroed.append((n, Fraction(0)))
            zeroed.append((tuple(-v for v in n), Fraction(0)))
        return Cone.from_halfspaces(zeroed, self.ambient)

    def relative_interior_point(self) -> Vector:
        """Deterministic rational point in the relative interior.

        Pointed case: vertex barycenter plus the sum of the primitive rays.
        Non-pointed polyhedra (internal complement cells only) fall back to
        a strictly-interior LP.
        """
        if self.is_empty:
            raise EmptyPolyhedron("empty polyhedron has no relative interior")
        if self.is_pointed:
            rep = self.vrep()
            point = tuple(Fraction(0) for _ in range(self.ambient))
            for v in rep.vertices:
                point = la.vadd(point, v)
            point = la.vscale(Fraction(1, len(rep.vertices)), point)
            for r in rep.rays:
                point = la.vadd(point, la.vec(r))
            return point
        if not self.equalities and not self.facets:
            return tuple(Fraction(0) for _ in range(self.ambient))
        _, eq = _constraints(self.equalities, ())
        strict = [([Fraction(v) for v in n], b) for n, b in self.facets]
        pt = lp.feasible_point(eq=eq, strict=strict) if strict else lp.feasible_point(eq=eq)
        assert pt is not None
        return tuple(pt)

    def intersection(self, other: "Polyhedron") -> "Polyhedron":
        if self.ambient != other.ambient:
            raise ValueError("ambient rank mismatch")
        if self.is_empty or other.is_empty:
            return Polyhedron._make_empty(self.ambient)
        return Polyhedron.from_halfspaces(self.halfspace_pairs + other.halfspace_pairs,
                                          self.ambient)

    def translate(self, w: Sequence) -> "Polyhedron":
        w = la.vec(w)
        if self.is_empty:
            return self
        shifted = [(n, b + la.dot(n, w)) for n, b in self.halfspace_pairs]
        return Polyhedron.from_halfspaces(shifted, self.ambient)

    def contains_polyhedron(self, other: "Polyhedron") -> bool:
        """Exact containment other <= self, by LP on each halfspace."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        ge, eq = _constraints(other.equalities, other.facets)
        for n, b in self.halfspace_pairs:
            res = lp.minimize([Fraction(v) for v in n], ge=ge, eq=eq)
            if res.status != lp.OPTIMAL or res.value < b:
                return False
        return True

    def faces(self) -> tuple["Polyhedron", ...]:
        """All nonempty faces, self included, in canonical order."""
        if self.is_empty:
            return ()
        found = {self}
        frontier = [self]
        while frontier:
            current = frontier.pop()
            for n, b in current.facets:
                eqs = current.halfspace_pairs + ((tuple(-v for v in n), -b),)
                child = type(self).from_halfspaces(eqs, self.ambient)
                if not child.is_empty and child not in found:
                    found.add(child)
                    frontier.append(child)
        return tuple(sorted(found, key=lambda p: (p.dim, p.equalities, p.facets)))

    def facet_faces(self) -> tuple["Polyhedron", ...]:
        """Codimension-one faces (children in the face poset)."""
        if self.is_empty:
            return ()
        out = set()
        for n, b in self.facets:
            eqs = self.halfspace_pairs + ((tuple(-v for v in n), -b),)
            child = type(self).from_halfspaces(eqs, self.ambient)
            if not child.is_empty and child.dim == self.dim - 1:
                out.add(child)
        return tuple(sorted(out, key=lambda p: (p.dim, p.equalities, p.facets)))

    def is_face_of(self, other: "Polyhedron") -> bool:
        """True iff self = other cut by a valid hyperplane (self = other allowed)."""
        if self.is_empty or other.is_empty:
            return False
        if self.as_polyhedron() == other.as_polyhedron():
            return True
        if not other.contains_polyhedron(self):
            return False
        z = self.relative_interior_point()
        active = list(other.halfspace_pairs)
        for n, b in other.facets:
            if la.dot(n, z) == b:
                active.append((tuple(-v for v in n), -b))
        minimal_face = Polyhedron.from_halfspaces(active, self.ambient)
        return minimal_face == self.as_polyhedron()

    def __repr__(self):
        if self.is_empty:
            return f"Polyhedron.empty(ambient={self.ambient})"
        return (f"{type(self).__name__}(ambient={self.ambient}, "
                f"eq={len(self.equalities)}, facets={len(self.facets)}, dim={self.dim})")


class Cone(Polyhedron):
    """Polyhedron whose canonical bounds are all zero."""

    def __post_init__(self):
        for _, b in tuple(self.equalities) + tuple(self.facets):
            if b != 0:
                raise ValueError("cone bounds must all be zero")

    @classmethod
    def from_rays(cls, rays: Sequence[Sequence], ambient: int) -> "Cone":
        """Cone generated by rays (possibly none: the zero cone)."""
        rays = [la.vec(r) for r in rays]
        gens = sorted({la.primitive(r) for r in rays if not la.is_zero_vector(r)})
        lin, dual_rays = _dd_cone(gens, ambient)
        halfspaces: list[HalfSpacePair] = [(u, Fraction(0)) for u in dual_rays]
        for u in lin:
            halfspaces.append((u, Fraction(0)))
            halfspaces.append((tuple(-v for v in u), Fraction(0)))
        if not halfspaces:
            # dual cone is {0}: the primal cone is the whole space
            return cls(ambient=ambient, is_empty=False, equalities=(), facets=())
        return cls.from_halfspaces(halfspaces, ambient)

    @classmethod
    def zero(cls, ambient: int) -> "Cone":
        return cls.from_rays((), ambient)

    @classmethod
    def of(cls, p: Polyhedron) -> "Cone":
        """Reinterpret a zero-bound polyhedron as a Cone."""
        return cls(p.ambient, p.is_empty, p.equalities, p.facets)

    @cached_property
    def generator_description(self) -> tuple[tuple[IntVector, ...], tuple[IntVector, ...]]:
        """(lineality basis, extreme rays modulo lineality)."""
        if self.is_empty:
            raise EmptyPolyhedron("empty cone")
        normals = [n for n, _ in self.facets]
        for n, _ in self.equalities:
            normals.append(n)
            normals.append(tuple(-v for v in n))
        if not normals:
            ident = tuple(tuple(1 if j == i else 0 for j in range(self.ambient))
                          for i in range(self.ambient))
            return ident, ()
        return _dd_cone(sorted(set(normals)), self.ambient)

    @property
    def rays(self) -> tuple[IntVector, ...]:
        """Extreme rays of a pointed cone."""
        lin, rays = self.generator_description
        if lin:
            raise NotPointed("extreme rays require a pointed cone")
        return rays

    @property
    def generators(self) -> tuple[IntVector, ...]:
        """A finite generating set: extreme rays plus +/- lineality basis."""
        lin, rays = self.generator_description
        out = list(rays)
        for l in lin:
            out.append(l)
            out.append(tuple(-v for v in l))
        return tuple(sorted(out))

    @property
    def is_zero(self) -> bool:
        return not self.is_empty and self.dim == 0


@dataclass(frozen=True)
class AdmissibilityResult:
    ok: bool
    cone_index: int | None
    reason: str | None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Fan:
    """Finite fan: pointed cones, closed under faces, meeting in common faces."""

    ambient: int
    cones: tuple[Cone, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.cones)})

    @classmethod
    def from_cones(cls, cones: Sequence[Cone], ambient: int | None = None) -> "Fan":
        """Build a fan from (maximal) cones; faces are completed automatically."""
        cones = list(cones)
        if ambient is None:
            if not cones:
                raise ValueError("ambient rank required for an empty cone list")
            ambient = cones[0].ambient
        closure: set[Cone] = set()
        for c in cones:
            if c.ambient != ambient:
                raise NotAFan("mixed ambient ranks")
            if not c.is_pointed:
                raise NotAFan("fans consist of pointed cones")
            for f in c.faces():
                closure.add(Cone.of(f))
        if not closure:
            closure.add(Cone.from_rays((), ambient))
        ordered = tuple(sorted(closure, key=lambda c: (c.dim, c.equalities, c.facets)))
        fan = cls(ambient=ambient, cones=ordered)
        fan.validate()
        return fan

    @classmethod
    def trivial(cls, ambient: int) -> "Fan":
        return cls.from_cones([Cone.from_rays((), ambient)], ambient)

    def validate(self) -> None:
        for i, c in enumerate(self.cones):
            for j in range(i + 1, len(self.cones)):
                meet = Cone.of(c.intersection(self.cones[j]))
                if meet not in self._index:
                    raise NotAFan(f"intersection of cones {i} and {j} is not in the fan")
                if not (meet.is_face_of(c) and meet.is_face_of(self.cones[j])):
                    raise NotAFan(f"cones {i} and {j} do not meet in a common face")

    def index_of(self, cone: Polyhedron) -> int | None:
        return self._index.get(Cone.of(cone))

    def face_indices(self, index: int) -> tuple[int, ...]:
        """Indices of the faces of cone `index` (itself included)."""
        cone = self.cones[index]
        out = []
        for f in cone.faces():
            i = self.index_of(f)
            assert i is not None
            out.append(i)
        return tuple(sorted(out))

    def __len__(self):
        return len(self.cones)


def recession_cone(p: Polyhedron) -> Cone:
    return p.recession_cone()


def face_of(q: Polyhedron, p: Polyhedron) -> bool:
    return q.is_face_of(p)


def relative_interior_point(p: Polyhedron) -> Vector:
    return p.relative_interior_point()


def is_admissible(p: Polyhedron, fan: Fan) -> AdmissibilityResult:
    """Is the recession cone of p a cone of the fan?

    Non-pointed input is rejected with a diagnostic rather than searched
    for: every cone of a fan is pointed, so a non-pointed polyhedron can
    never be admissible and the failure mode deserves its own name.
    """
    if p.ambient != fan.ambient:
        return AdmissibilityResult(False, None, "ambient rank mismatch")
    sigma = p.recession_cone()
    if not sigma.is_pointed:
        return AdmissibilityResult(False, None, "polyhedron is not pointed")
    idx = fan.index_of(sigma)
    if idx is None:
        return AdmissibilityResult(False, None, "recession cone is not a cone of the fan")
    return AdmissibilityResult(True, idx, None)
