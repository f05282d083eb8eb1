"""Exact rational cones and polyhedra.

Conversions between generators and inequalities are done by brute force
over subsets with exact rank checks.  At the sizes this package works with
(a dozen defining vectors at most) that is fast enough and easy to trust.

Two spaces are in play: ``COCHARACTER`` (Lambda_Q) and ``CHARACTER`` (V_Q).
They are dual under the standard dot product, so a cone in one has its dual
in the other, and the outward normals of a polyhedron in V live in Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import _linalg as la
from . import _lp

COCHARACTER = "cocharacter"
CHARACTER = "character"
SPACES = (COCHARACTER, CHARACTER)


class PolyhedralError(ValueError):
    pass


class EmptyPolyhedron(PolyhedralError):
    pass


class LowerDimensional(PolyhedralError):
    pass


def dual_space(space: str) -> str:
    return CHARACTER if space == COCHARACTER else COCHARACTER


def _check_space(space: str) -> None:
    if space not in SPACES:
        raise PolyhedralError(f"unknown space tag {space!r}")


def _facets_from_generators(gens: list[tuple], r: int) -> tuple[tuple, tuple]:
    """(equations, facet normals) with cone = {x : E x = 0, F x >= 0}."""
    equations = tuple(la.nullspace(gens, r)) if gens else la.identity(r)
    d = r - len(equations)
    if d == 0:
        return equations, ()
    facets = set()
    if d == 1:
        subsets: Iterable = [()]
    else:
        subsets = combinations(gens, d - 1)
    for sub in subsets:
        rows = list(sub) + list(equations)
        if sub and la.rank(sub, r) < d - 1:
            continue
        null = la.nullspace(rows, r)
        if len(null) != 1:
            continue
        u = null[0]
        vals = [la.dot(u, g) for g in gens]
        if all(v >= 0 for v in vals):
            facets.add(u)
        elif all(v <= 0 for v in vals):
            facets.add(la.neg(u))
    return equations, tuple(sorted(facets))


def _rays_from_inequalities(equations: Sequence, ineqs: Sequence, r: int) -> tuple[tuple, tuple]:
    """(extreme rays, lineality basis) of {x : E x = 0, F x >= 0}.

    Rays are taken in the orthogonal complement of the lineality space, which
    makes them canonical.
    """
    equations = [tuple(e) for e in equations]
    ineqs = [tuple(f) for f in ineqs]
    lineality = la.nullspace(equations + ineqs, r) if (equations or ineqs) else list(la.identity(r))
    lin = la.integer_rref(lineality, r)
    base = equations + list(lin)
    rb = la.rank(base, r) if base else 0
    need = r - 1 - rb
    if need < 0:
        return (), lin
    rays = set()
    for sub in combinations(ineqs, need):
        rows = base + list(sub)
        if la.rank(rows, r) != r - 1:
            continue
        null = la.nullspace(rows, r)
        x = null[0]
        vals = [la.dot(f, x) for f in ineqs]
        if all(v >= 0 for v in vals):
            rays.add(x)
        elif all(v <= 0 for v in vals):
            rays.add(la.neg(x))
    return tuple(sorted(rays)), lin


@dataclass(frozen=True)
class ConeQ:
    """A rational polyhedral cone in canonical V-representation.

    ``rays`` are the primitive extreme rays (modulo the lineality space, taken
    orthogonal to it) and ``lineality`` a canonical basis of the lineality
    space.  Two ConeQ compare equal exactly when they are the same set.
    """

    space: str
    rank: int
    rays: tuple
    lineality: tuple = ()

    @cached_property
    def _hrep(self) -> tuple[tuple, tuple]:
        gens = list(self.rays) + list(self.lineality) + [la.neg(v) for v in self.lineality]
        return _facets_from_generators(gens, self.rank)

    @property
    def equations(self) -> tuple:
        return self._hrep[0]

    @property
    def facet_normals(self) -> tuple:
        return self._hrep[1]

    @cached_property
    def dim(self) -> int:
        gens = list(self.rays) + list(self.lineality)
        return la.rank(gens, self.rank) if gens else 0

    @property
    def is_strongly_convex(self) -> bool:
        return not self.lineality

    @property
    def generators(self) -> tuple:
        return self.rays + self.lineality + tuple(la.neg(v) for v in self.lineality)

    def contains(self, x: Sequence) -> bool:
        return contains(self, x)

    def __repr__(self) -> str:
        lin = f", lineality={list(self.lineality)}" if self.lineality else ""
        return f"ConeQ({self.space}, rays={list(self.rays)}{lin})"


def cone(generators: Iterable[Sequence], rank: int, space: str = COCHARACTER) -> ConeQ:
    """Canonical cone generated by ``generators`` (rationals allowed)."""
    _check_space(space)
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != rank:
            raise PolyhedralError(f"generator {g} does not have length {rank}")
        p = la.primitive(g)
        if not la.is_zero(p) and p not in gens:
            gens.append(p)
    if not gens:
        return ConeQ(space, rank, (), ())
    eqs, facets = _facets_from_generators(gens, rank)
    rays, lin = _rays_from_inequalities(eqs, facets, rank)
    out = ConeQ(space, rank, rays, lin)
    out.__dict__["_hrep"] = (eqs, facets)
    return out


def cone_from_inequalities(
    inequalities: Iterable[Sequence], rank: int, space: str = COCHARACTER, equations: Iterable[Sequence] = ()
) -> ConeQ:
    """{x : <f, x> >= 0 for f in inequalities, <e, x> = 0 for e in equations}."""
    _check_space(space)
    ineqs = [la.primitive(f) for f in inequalities if not la.is_zero(f)]
    eqs = [la.primitive(e) for e in equations if not la.is_zero(e)]
    rays, lin = _rays_from_inequalities(eqs, ineqs, rank)
    return ConeQ(space, rank, rays, lin)


def zero_cone(rank: int, space: str = COCHARACTER) -> ConeQ:
    return ConeQ(space, rank, (), ())


def whole_space(rank: int, space: str = COCHARACTER) -> ConeQ:
    return ConeQ(space, rank, (), la.identity(rank))


def dual_cone(sigma: ConeQ) -> ConeQ:
    """{u : <u, x> >= 0 for all x in sigma}, in the dual space."""
    ineqs = list(sigma.generators)
    return cone_from_inequalities(ineqs, sigma.rank, dual_space(sigma.space))


def negate(sigma: ConeQ) -> ConeQ:
    return cone([la.neg(v) for v in sigma.generators], sigma.rank, sigma.space)


def linear_transform(sigma: ConeQ, matrix: Sequence[Sequence]) -> ConeQ:
    return cone([la.mat_vec(matrix, v) for v in sigma.generators], sigma.rank, sigma.space)


def contains(sigma: ConeQ, x: Sequence) -> bool:
    if len(x) != sigma.rank:
        raise PolyhedralError("dimension mismatch")
    return all(la.dot(e, x) == 0 for e in sigma.equations) and all(
        la.dot(f, x) >= 0 for f in sigma.facet_normals
    )


def contains_cone(sigma: ConeQ, tau: ConeQ) -> bool:
    return all(contains(sigma, g) for g in tau.generators)


def intersect(sigma: ConeQ, tau: ConeQ) -> ConeQ:
    if sigma.space != tau.space or sigma.rank != tau.rank:
        raise PolyhedralError("ambient mismatch")
    eqs = list(sigma.equations) + list(tau.equations)
    ineqs = list(sigma.facet_normals) + list(tau.facet_normals)
    rays, lin = _rays_from_inequalities(eqs, ineqs, sigma.rank)
    return ConeQ(sigma.space, sigma.rank, rays, lin)


def face_lattice(sigma: ConeQ) -> tuple:
    """All faces of sigma, from the smallest up, sorted by (dim, rays)."""
    rays = sigma.rays
    facets = sigma.facet_normals
    zero_sets = [frozenset(i for i, v in enumerate(rays) if la.dot(f, v) == 0) for f in facets]
    start = frozenset(range(len(rays)))
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for z in zero_sets:
            nxt = cur & z
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    faces = [ConeQ(sigma.space, sigma.rank, tuple(rays[i] for i in sorted(s)), sigma.lineality) for s in seen]
    return tuple(sorted(faces, key=lambda c: (c.dim, c.rays)))


def is_face(tau: ConeQ, sigma: ConeQ) -> bool:
    return tau in face_lattice(sigma)


def facets(sigma: ConeQ) -> tuple:
    return tuple(f for f in face_lattice(sigma) if f.dim == sigma.dim - 1)


def is_simplicial(sigma: ConeQ) -> bool:
    return len(sigma.rays) == sigma.dim and not sigma.lineality


# --- polyhedra -------------------------------------------------------------


@dataclass(frozen=True)
class PolyhedronQ:
    """{x : <u, x> <= c for (u, c) in inequalities}, canonicalised.

    Normals are primitive integer covectors, bounds are Fractions, the list
    is irredundant and sorted.  An empty polyhedron is flagged and carries
    the single inequality 0 <= -1.
    """

    space: str
    rank: int
    inequalities: tuple
    empty: bool = False

    @cached_property
    def lineality(self) -> tuple:
        normals = [u for u, _ in self.inequalities]
        if not normals:
            return la.identity(self.rank)
        return la.integer_rref(la.nullspace(normals, self.rank), self.rank)

    @cached_property
    def implicit_equalities(self) -> tuple:
        """Indices of inequalities that hold with equality on all of P."""
        if self.empty:
            return ()
        out = []
        for i, (u, c) in enumerate(self.inequalities):
            res = _lp.maximize(la.neg(u), [v for v, _ in self.inequalities], [b for _, b in self.inequalities])
            if res.status == _lp.OPTIMAL and -res.value == c:
                out.append(i)
        return tuple(out)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.empty and not self.implicit_equalities

    def contains(self, x: Sequence) -> bool:
        return not self.empty and all(la.dot(u, x) <= c for u, c in self.inequalities)

    def __repr__(self) -> str:
        if self.empty:
            return f"PolyhedronQ({self.space}, empty)"
        body = ", ".join(f"{list(u)}.x <= {c}" for u, c in self.inequalities)
        return f"PolyhedronQ({self.space}, [{body}])"


def polyhedron(inequalities: Iterable[tuple], rank: int, space: str = CHARACTER) -> PolyhedronQ:
    """Canonical polyhedron from pairs ``(normal, bound)`` meaning <normal, x> <= bound."""
    _check_space(space)
    best: dict[tuple, Fraction] = {}
    for u, c in inequalities:
        u = tuple(u)
        if len(u) != rank:
            raise PolyhedralError(f"normal {u} does not have length {rank}")
        c = la.parse_rational(c) if not isinstance(c, Fraction) else c
        if la.is_zero(u):
            if c < 0:
                return _empty(rank, space)
            continue
        fr = la.as_fraction_vec(u)
        p = la.primitive(fr)
        # scale factor: u = k p with k > 0
        k = next(a / b for a, b in zip(fr, p) if b != 0)
        bound = Fraction(c) / k
        if p not in best or bound < best[p]:
            best[p] = bound
    ineqs = sorted(best.items())
    if not ineqs:
        return PolyhedronQ(space, rank, ())
    normals = [u for u, _ in ineqs]
    bounds = [c for _, c in ineqs]
    if _lp.feasible_point(normals, bounds, rank) is None:
        return _empty(rank, space)
    keep = list(range(len(ineqs)))
    for i in range(len(ineqs)):
        others = [j for j in keep if j != i]
        res = _lp.maximize(normals[i], [normals[j] for j in others], [bounds[j] for j in others])
        if res.status == _lp.OPTIMAL and res.value <= bounds[i]:
            keep = others
    return PolyhedronQ(space, rank, tuple(ineqs[j] for j in keep))


def _empty(rank: int, space: str) -> PolyhedronQ:
    return PolyhedronQ(space, rank, (((0,) * rank, Fraction(-1)),), empty=True)


def whole_polyhedron(rank: int, space: str = CHARACTER) -> PolyhedronQ:
    return PolyhedronQ(space, rank, ())


def shift(sigma: ConeQ, v: Sequence) -> PolyhedronQ:
    """The translate sigma + v as a polyhedron in sigma's own space."""
    if len(v) != sigma.rank:
        raise PolyhedralError("dimension mismatch")
    ineqs = [(la.neg(f), -la.dot(f, v)) for f in sigma.facet_normals]
    for e in sigma.equations:
        ineqs.append((e, la.dot(e, v)))
        ineqs.append((la.neg(e), -la.dot(e, v)))
    return polyhedron(ineqs, sigma.rank, sigma.space)


def intersect_polyhedra(p: PolyhedronQ, q: PolyhedronQ) -> PolyhedronQ:
    if p.space != q.space or p.rank != q.rank:
        raise PolyhedralError("ambient mismatch")
    if p.empty or q.empty:
        return _empty(p.rank, p.space)
    return polyhedron(list(p.inequalities) + list(q.inequalities), p.rank, p.space)


def recession_cone(p: PolyhedronQ) -> ConeQ:
    return cone_from_inequalities([la.neg(u) for u, _ in p.inequalities], p.rank, p.space)


def minimal_faces(p: PolyhedronQ) -> tuple:
    """Minimal faces as pairs (point orthogonal to the lineality space, tight indices)."""
    if p.empty:
        raise EmptyPolyhedron("polyhedron is empty")
    r = p.rank
    lin = list(p.lineality)
    normals = [u for u, _ in p.inequalities]
    bounds = [c for _, c in p.inequalities]
    k = r - len(lin)
    if k == 0:
        return (((Fraction(0),) * r, ()),)
    seen = {}
    for sub in combinations(range(len(normals)), k):
        rows = [normals[i] for i in sub] + lin
        if la.rank(rows, r) != r:
            continue
        x = la.solve(rows, [bounds[i] for i in sub] + [0] * len(lin), r)
        if x is None or x in seen:
            continue
        if all(la.dot(u, x) <= c for u, c in zip(normals, bounds)):
            seen[x] = tuple(i for i, (u, c) in enumerate(zip(normals, bounds)) if la.dot(u, x) == c)
    return tuple(sorted(seen.items()))


def vertices(p: PolyhedronQ) -> tuple:
    """Exact vertex set; empty when P has a nonzero lineality space."""
    if p.empty:
        raise EmptyPolyhedron("polyhedron is empty")
    if p.lineality:
        return ()
    return tuple(x for x, _ in minimal_faces(p))


@dataclass(frozen=True)
class NormalFan:
    """Normal fan of a polyhedron: maximal cones (one per minimal face) and
    the primitive outward facet normals, which are its rays."""

    maximal_cones: tuple
    rays: tuple
    points: tuple = field(default=(), compare=False)


def normal_fan(p: PolyhedronQ) -> NormalFan:
    if p.empty:
        raise EmptyPolyhedron("normal fan of an empty polyhedron")
    if not p.is_full_dimensional:
        raise LowerDimensional("polyhedron is not full-dimensional; pass it in its affine hull")
    space = dual_space(p.space)
    normals = [u for u, _ in p.inequalities]
    cones = []
    points = []
    for x, tight in minimal_faces(p):
        cones.append(cone([normals[i] for i in tight], p.rank, space))
        points.append(x)
    order = sorted(range(len(cones)), key=lambda i: cones[i].rays)
    return NormalFan(
        tuple(cones[i] for i in order),
        tuple(sorted(normals)),
        tuple(points[i] for i in order),
    )
