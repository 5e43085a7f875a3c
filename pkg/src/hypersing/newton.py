"""Newton polyhedra of germs at the origin.

Facets are enumerated exactly: every facet of ``conv(supp f) + R_{>=0}^m``
has an inward normal ``w >= 0``; for each zero pattern of ``w`` the remaining
coordinates are fixed by a hyperplane through affinely independent projected
vertices.  Faces are intersections of facets, and a face is compact exactly
when the normals of the facets through it cover every coordinate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .errors import DegenerateError, NotConvenientError, PreconditionError
from .linalg import det, nullspace, rank
from .localgb import is_unit_ideal
from .poly import Exponent, Poly


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]  # primitive, nonnegative
    level: int
    vertices: frozenset[Exponent]

    @property
    def is_compact(self) -> bool:
        return all(w > 0 for w in self.normal)

    def value(self, b: Sequence) -> Fraction:
        return Fraction(sum(w * x for w, x in zip(self.normal, b)), self.level)


@dataclass(frozen=True)
class Face:
    """A compact face of the Newton diagram."""

    vertices: frozenset[Exponent]
    points: frozenset[Exponent]  # support points lying on the face
    dim: int

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1


@dataclass(frozen=True)
class NewtonPolyhedron:
    nvars: int
    vertices: tuple[Exponent, ...]
    facets: tuple[Facet, ...]
    compact_faces: tuple[Face, ...]

    @property
    def compact_facets(self) -> tuple[Facet, ...]:
        return tuple(F for F in self.facets if F.is_compact)

    def filtration_value(self, b: Sequence) -> Fraction:
        return newton_filtration_value(self, b)

    def all_faces_simplicial(self) -> bool:
        return all(face.is_simplex for face in self.compact_faces)

    def facets_simplicial(self) -> bool:
        """Compact facets only; weaker than ``all_faces_simplicial`` when some
        compact face lies in no compact facet."""
        return all(self.facet_faces(F).is_simplex for F in self.compact_facets)

    def facet_faces(self, facet: Facet) -> Face:
        return next(f for f in self.compact_faces if f.vertices == facet.vertices)


def _affine_rank(points: Sequence[Exponent]) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return rank([[x - y for x, y in zip(p, base)] for p in pts[1:]])


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = reduce(lcm, (x.denominator for x in vec), 1)
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, (abs(x) for x in ints), 0) or 1
    return tuple(x // g for x in ints)


def _minimal_points(points) -> list[Exponent]:
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    out: list[Exponent] = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in out):
            out.append(p)
    return out


def _facets(points: list[Exponent], m: int) -> list[tuple[tuple[int, ...], int]]:
    found = set()
    for nz_count in range(1, m + 1):
        for nz in itertools.combinations(range(m), nz_count):
            proj = sorted({tuple(p[i] for i in nz) for p in points})
            k = nz_count
            for subset in itertools.combinations(proj, k):
                # unknowns (w_nz, N): <w, p> - N = 0 on the subset
                rows = [list(p) + [-1] for p in subset]
                ns = nullspace(rows, k + 1)
                if len(ns) != 1:
                    continue
                sol = ns[0]
                w = sol[:k]
                if all(x < 0 for x in w):
                    sol = [-x for x in sol]
                    w = sol[:k]
                if not all(x > 0 for x in w):
                    continue
                prim = _primitive(sol)
                wk, level = prim[:k], prim[k]
                if any(sum(a * b for a, b in zip(wk, p)) < level for p in proj):
                    continue
                full = [0] * m
                for i, x in zip(nz, wk):
                    full[i] = x
                found.add((tuple(full), level))
    return sorted(found, key=lambda t: (t[0], t[1]))


def newton_polyhedron(f: Poly) -> NewtonPolyhedron:
    """Vertices, facets and compact faces of the Newton polyhedron of ``f``."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polyhedron")
    m = f.nvars
    support = list(f.terms)
    cands = _minimal_points(support)
    raw = _facets(cands, m)

    def on(point, facet):
        w, level = facet
        return sum(a * b for a, b in zip(w, point)) == level

    # a candidate is a vertex iff no other candidate shares all its facets
    vertices = []
    for p in cands:
        through = [F for F in raw if on(p, F)]
        if not any(q != p and all(on(q, F) for F in through) for q in cands):
            vertices.append(p)
    vertices.sort()
    facets = tuple(
        Facet(w, level, frozenset(v for v in vertices if on(v, (w, level)))) for w, level in raw
    )

    # face lattice as closure of facet vertex sets under intersection
    faces = {F.vertices for F in facets}
    frontier = set(faces)
    while frontier:
        new = set()
        for a in frontier:
            for F in facets:
                c = a & F.vertices
                if c and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new

    compact = []
    for S in faces:
        through = [F for F in facets if S <= F.vertices]
        if not all(any(F.normal[i] > 0 for F in through) for i in range(m)):
            continue
        pts = frozenset(p for p in support if all(on(p, (F.normal, F.level)) for F in through))
        compact.append(Face(S, pts, _affine_rank(sorted(S))))
    compact.sort(key=lambda fc: (fc.dim, sorted(fc.vertices)))
    return NewtonPolyhedron(m, tuple(vertices), facets, tuple(compact))


def is_convenient(f: Poly) -> bool:
    """True iff the support contains a pure power of every variable."""
    m = f.nvars
    have = set()
    for e in f.terms:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            have.add(nz[0])
    return len(have) == m


def face_polynomial(f: Poly, face: Face) -> Poly:
    return Poly(f.vars, {e: c for e, c in f.terms.items() if e in face.points})


def degenerate_faces(f: Poly, npoly: NewtonPolyhedron | None = None) -> list[Face]:
    """Compact faces whose face polynomial has a critical point in the torus."""
    npoly = npoly or newton_polyhedron(f)
    m = f.nvars
    tvars = f.vars + ("_t",)
    rabinowitsch = Poly(tvars, {(1,) * (m + 1): 1, (0,) * (m + 1): -1})
    bad = []
    for face in npoly.compact_faces:
        fs = face_polynomial(f, face)
        if len(fs) == 1:
            continue  # a monomial has no critical points in the torus
        gens = [Poly(tvars, {e + (0,): c for e, c in p.terms.items()}) for p in fs.partials()]
        if not is_unit_ideal(gens + [rabinowitsch]):
            bad.append(face)
    return bad


def is_nondegenerate(f: Poly, npoly: NewtonPolyhedron | None = None) -> bool:
    if f.constant_term():
        raise PreconditionError("f does not vanish at the origin")
    return not degenerate_faces(f, npoly)


def _pulling_triangulation(face: Face, faces: Sequence[Face]) -> list[tuple[Exponent, ...]]:
    if face.dim == 0:
        return [tuple(face.vertices)]
    apex = min(face.vertices)
    out = []
    for g in faces:
        if g.dim == face.dim - 1 and g.vertices < face.vertices and apex not in g.vertices:
            for simplex in _pulling_triangulation(g, faces):
                out.append(simplex + (apex,))
    return out


def scaled_volume_below(npoly: NewtonPolyhedron) -> int:
    """``m! * vol`` of the region between the origin and the Newton diagram."""
    total = Fraction(0)
    for facet in npoly.compact_facets:
        face = npoly.facet_faces(facet)
        for simplex in _pulling_triangulation(face, npoly.compact_faces):
            total += abs(det([list(v) for v in simplex]))
    assert total.denominator == 1
    return int(total)


def kouchnirenko_mu(f: Poly) -> int:
    """Milnor number from the Newton polyhedron of a convenient nondegenerate germ."""
    if not is_convenient(f):
        missing = [
            v for i, v in enumerate(f.vars)
            if not any(e[i] and sum(e) == e[i] for e in f.terms)
        ]
        raise NotConvenientError(f"no pure power of {', '.join(missing)} in the support")
    bad = degenerate_faces(f)
    if bad:
        face = sorted(bad[0].points)
        raise DegenerateError(f"face with exponents {face} is degenerate")
    m = f.nvars
    total = (-1) ** m  # k = 0 term
    for k in range(1, m + 1):
        vk = 0
        for subset in itertools.combinations(range(m), k):
            vk += scaled_volume_below(newton_polyhedron(f.restrict(subset)))
        total += (-1) ** (m - k) * vk
    return total


def newton_filtration_value(npoly: NewtonPolyhedron, b: Sequence) -> Fraction:
    """``min <w, b> / N`` over the compact facets."""
    if len(b) != npoly.nvars:
        raise ValueError(f"vector of length {len(b)} for {npoly.nvars} variables")
    facets = npoly.compact_facets
    if not facets:
        raise PreconditionError("the Newton polyhedron has no compact facet")
    return min(F.value(b) for F in facets)


def diagonal_minimal_exponent(npoly: NewtonPolyhedron) -> Fraction:
    """Inverse of the least ``c`` with ``(c, ..., c)`` in the Newton polyhedron."""
    m = npoly.nvars
    for i in range(m):
        if not any(sum(v) == v[i] and v[i] for v in npoly.vertices):
            raise NotConvenientError("the diagonal value needs a convenient Newton polyhedron")
    return min(Fraction(sum(F.normal), F.level) for F in npoly.compact_facets)
