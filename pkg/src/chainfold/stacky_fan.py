"""Stacky fans in the positive Weyl chamber.

A stacky fan is a fan in Lambda_Q together with a nonzero lattice vector
(the ray vector) on each ray and a total order on those vectors.  Cones
are recorded by the indices of their rays, so the zero cone is ``()``.

Besides validation this module decides the geometric properties that
classify the associated moduli stack: simpliciality of cones, whether the
support is the whole chamber, polarity of the fan, convexity of the
support of the Weyl-saturated fan, and it implements the completion of a
single cone to a polar fan with Weyl-convex support.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Optional, Sequence

from . import _linalg as la
from . import _lp
from . import polyhedral as ph
from .root_datum import (
    RootDatum,
    central_cocharacters,
    fundamental_coweights,
    is_dominant,
    longest_element,
    sum_of_positive_roots,
    weyl_group,
)

log = logging.getLogger(__name__)


class FanError(ValueError):
    """Structurally malformed fan input (bad indices, wrong lengths)."""


class LowerDimensionalSupport(ValueError):
    pass


class CompletionError(RuntimeError):
    pass


@lru_cache(maxsize=8192)
def _faces(c: ph.ConeQ) -> frozenset:
    return frozenset(ph.face_lattice(c))


@lru_cache(maxsize=256)
def chamber(rd: RootDatum) -> ph.ConeQ:
    """The dominant chamber of Lambda_Q."""
    if not rd.simple_roots:
        return ph.whole_space(rd.rank)
    return ph.cone_from_inequalities(rd.simple_roots, rd.rank)


@dataclass(frozen=True)
class StackyFan:
    rd: RootDatum
    ray_vectors: tuple
    maximal_cones: tuple
    ordering: tuple
    rays: tuple

    @property
    def n_rays(self) -> int:
        return len(self.ray_vectors)

    @cached_property
    def position(self) -> dict:
        """Ray index -> position in the chosen order."""
        return {idx: pos for pos, idx in enumerate(self.ordering)}

    def cone_of(self, indices: Sequence[int]) -> ph.ConeQ:
        return _cone_of(self.rays, tuple(indices), self.rd.rank)

    @cached_property
    def cones(self) -> tuple:
        """Every cone of the fan as a sorted tuple of ray indices, smallest first."""
        out = set()
        for mc in self.maximal_cones:
            c = self.cone_of(mc)
            for face in _faces(c):
                out.add(tuple(i for i in mc if ph.contains(face, self.rays[i])))
        return tuple(sorted(out, key=lambda t: (len(t), t)))

    @cached_property
    def ray_index(self) -> dict:
        return {tuple(b): i for i, b in enumerate(self.ray_vectors)}

    def transform(self, matrix) -> "StackyFan":
        return StackyFan(
            self.rd,
            tuple(la.mat_vec(matrix, b) for b in self.ray_vectors),
            self.maximal_cones,
            self.ordering,
            tuple(la.mat_vec(matrix, v) for v in self.rays),
        )

    def reordered(self, ordering: Sequence[int]) -> "StackyFan":
        return stacky_fan(self.rd, self.ray_vectors, self.maximal_cones, ordering, self.rays)


@lru_cache(maxsize=8192)
def _cone_of(rays: tuple, indices: tuple, rank: int) -> ph.ConeQ:
    return ph.cone([rays[i] for i in indices], rank)


def stacky_fan(
    rd: RootDatum,
    ray_vectors: Sequence[Sequence[int]],
    maximal_cones: Sequence[Sequence[int]],
    ordering: Optional[Sequence[int]] = None,
    rays: Optional[Sequence[Sequence[int]]] = None,
) -> StackyFan:
    """Build a StackyFan, checking only structure (lengths, indices).

    ``rays`` defaults to the primitive vectors on the ray vectors; pass it to
    describe a fan whose ray vectors might not sit on their rays.  Geometric
    conditions are checked by :func:`validate`.
    """
    r = rd.rank
    betas = []
    for b in ray_vectors:
        b = tuple(b)
        if len(b) != r or not all(isinstance(x, int) and not isinstance(x, bool) for x in b):
            raise FanError(f"ray vector {b} is not an integer vector of length {r}")
        betas.append(b)
    n = len(betas)
    if rays is None:
        prim = tuple(la.primitive(b) for b in betas)
    else:
        prim = tuple(la.primitive(v) for v in rays)
        if len(prim) != n or any(len(v) != r for v in prim):
            raise FanError("need one ray generator of the right length per ray vector")
    cones = set()
    for mc in maximal_cones:
        mc = tuple(sorted(set(int(i) for i in mc)))
        if any(not 0 <= i < n for i in mc):
            raise FanError(f"cone {mc} refers to a ray index outside 0..{n - 1}")
        cones.add(mc)
    # drop listed cones that are contained in another listed cone's index set
    cones = [c for c in cones if not any(set(c) < set(d) for d in cones)]
    if not cones:
        cones = [()]
    if ordering is None:
        ordering = tuple(range(n))
    ordering = tuple(int(i) for i in ordering)
    if sorted(ordering) != list(range(n)):
        raise FanError("ordering must be a permutation of the ray indices")
    return StackyFan(rd, tuple(betas), tuple(sorted(cones)), ordering, prim)


def zero_fan(rd: RootDatum) -> StackyFan:
    return stacky_fan(rd, [], [])


def single_cone_fan(rd: RootDatum, ray_vectors: Sequence[Sequence[int]]) -> StackyFan:
    return stacky_fan(rd, ray_vectors, [range(len(ray_vectors))])


# --- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Problem:
    kind: str
    detail: str
    cones: tuple = ()
    rays: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.valid


def validate(fan: StackyFan, require_dominant: bool = True) -> ValidationReport:
    """Check every stacky-fan invariant and report each violation.

    A clean report also certifies the common-face condition for every pair
    of cones, which is what gluing the per-cone substacks needs.
    """
    problems = []
    rd = fan.rd
    for i, (b, v) in enumerate(zip(fan.ray_vectors, fan.rays)):
        if la.is_zero(b):
            problems.append(Problem("zero_ray_vector", f"ray vector {i} is zero", rays=(i,)))
            continue
        if la.is_zero(v) or la.primitive(b) != v:
            problems.append(Problem("ray_vector_off_ray", f"ray vector {b} is not a positive multiple of ray {v}", rays=(i,)))
        if require_dominant and not is_dominant(rd, b):
            problems.append(Problem("not_dominant", f"ray vector {b} lies outside the dominant chamber", rays=(i,)))
    for i, j in combinations(range(fan.n_rays), 2):
        if fan.ray_vectors[i] == fan.ray_vectors[j]:
            problems.append(Problem("duplicate_ray_vector", f"ray vectors {i} and {j} coincide", rays=(i, j)))
        elif fan.rays[i] == fan.rays[j]:
            problems.append(Problem("duplicate_ray", f"ray vectors {i} and {j} lie on the same ray", rays=(i, j)))
    used = set(i for mc in fan.maximal_cones for i in mc)
    for i in range(fan.n_rays):
        if i not in used:
            problems.append(Problem("unused_ray", f"ray {i} belongs to no cone", rays=(i,)))
    if problems:
        return ValidationReport(tuple(problems))
    cones = {mc: fan.cone_of(mc) for mc in fan.maximal_cones}
    for mc, c in cones.items():
        if not c.is_strongly_convex:
            problems.append(Problem("not_strongly_convex", f"cone {list(mc)} contains a line", cones=(mc,)))
            continue
        extreme = set(c.rays)
        for i in mc:
            if fan.rays[i] not in extreme:
                problems.append(Problem("not_extreme", f"ray {i} is not an extreme ray of cone {list(mc)}", cones=(mc,), rays=(i,)))
    if problems:
        return ValidationReport(tuple(problems))
    for a, b in combinations(fan.maximal_cones, 2):
        meet = ph.intersect(cones[a], cones[b])
        if meet not in _faces(cones[a]) or meet not in _faces(cones[b]):
            problems.append(
                Problem("bad_intersection", f"cones {list(a)} and {list(b)} do not meet in a common face", cones=(a, b))
            )
    return ValidationReport(tuple(problems))


def _require_valid(fan: StackyFan, require_dominant: bool = True) -> None:
    report = validate(fan, require_dominant)
    if not report.valid:
        raise FanError("; ".join(p.detail for p in report.problems))


# --- support checks ---------------------------------------------------------


def _union_is_hull(maximal: Sequence[ph.ConeQ], hull: ph.ConeQ) -> bool:
    """Whether the union of the given cones of a fan is exactly ``hull``.

    Assumes the cones lie in ``hull``.  The union equals hull iff every
    cone has dimension dim(hull) and each facet not lying on the boundary
    of hull is shared by exactly two cones.
    """
    d = hull.dim
    if d == 0:
        return True
    if any(c.dim != d for c in maximal):
        return False
    counts: Counter = Counter()
    for c in maximal:
        for f in _faces(c):
            if f.dim == d - 1:
                counts[f] += 1
    for f, k in counts.items():
        on_boundary = any(all(la.dot(n, g) == 0 for g in f.generators) for n in hull.facet_normals)
        if on_boundary:
            continue
        if k != 2:
            return False
    return True


def support_is_full_chamber(fan: StackyFan) -> bool:
    maximal = [fan.cone_of(mc) for mc in fan.maximal_cones]
    ch = chamber(fan.rd)
    return _union_is_hull(maximal, ch)


def apply_longest(fan: StackyFan) -> StackyFan:
    """The fan w0 Sigma, which describes the coarse space as a spherical embedding."""
    return fan.transform(longest_element(fan.rd).matrix)


@dataclass(frozen=True)
class OrbitPoset:
    """Cones of a fan ordered by reverse inclusion.

    ``covers`` holds pairs ``(a, b)`` where cone ``a`` is a facet of cone
    ``b``; the orbit of ``b`` then lies in the closure of the orbit of ``a``.
    The zero cone is the open orbit.
    """

    cones: tuple
    dims: tuple
    covers: tuple

    @property
    def size(self) -> int:
        return len(self.cones)

    @property
    def counts_by_dim(self) -> dict:
        return dict(sorted(Counter(self.dims).items()))


def orbit_poset(fan: StackyFan) -> OrbitPoset:
    cones = fan.cones
    dims = tuple(fan.cone_of(c).dim for c in cones)
    covers = []
    for a, da in zip(cones, dims):
        for b, db in zip(cones, dims):
            if db == da + 1 and set(a) <= set(b):
                covers.append((a, b))
    return OrbitPoset(cones, dims, tuple(covers))


# --- polarity ---------------------------------------------------------------


@dataclass(frozen=True)
class PolarityCertificate:
    """Outcome of the polarity test.

    When ``polar`` is true, ``support_function`` maps each maximal cone to a
    character ``m`` such that u -> <m, u> on that cone is a conewise-linear
    function that is strictly convex across every interior wall; ``margin``
    is the smallest jump across a wall (normalised to at most 1).
    """

    polar: bool
    support_function: dict = field(default_factory=dict)
    margin: Fraction = Fraction(0)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.polar


def _span_hull(fan: StackyFan) -> ph.ConeQ:
    rays = [fan.rays[i] for i in range(fan.n_rays)]
    return ph.cone(rays, fan.rd.rank) if rays else ph.zero_cone(fan.rd.rank)


def is_polar(fan: StackyFan) -> PolarityCertificate:
    """Decide whether the fan is the normal fan of a polyhedron.

    This needs convex support and a support function that is linear on each
    maximal cone and strictly convex across every interior wall; the latter
    is an exact LP maximising the wall margin.
    """
    r = fan.rd.rank
    maximal = list(fan.maximal_cones)
    if maximal == [()]:
        return PolarityCertificate(True, {(): (Fraction(0),) * r}, Fraction(1))
    cones = {mc: fan.cone_of(mc) for mc in maximal}
    hull = _span_hull(fan)
    if not _union_is_hull(list(cones.values()), hull):
        return PolarityCertificate(False, reason="support is not convex")
    d = hull.dim
    k = len(maximal)
    nvar = k * r + 1
    tvar = k * r
    eq_rows, ub_rows, ub_rhs = [], [], []

    def diff_row(a: int, b: int, v: Sequence) -> list:
        row = [Fraction(0)] * nvar
        for t in range(r):
            row[a * r + t] += v[t]
            row[b * r + t] -= v[t]
        return row

    walls = 0
    for (ia, a), (ib, b) in combinations(enumerate(maximal), 2):
        common = sorted(set(a) & set(b))
        for i in common:
            eq_rows.append(diff_row(ia, ib, fan.rays[i]))
        meet_dim = la.rank([fan.rays[i] for i in common], r) if common else 0
        if meet_dim != d - 1:
            continue
        walls += 1
        # <m_a - m_b, rho> >= t on a's side, and symmetrically
        for i in set(a) - set(b):
            row = diff_row(ib, ia, fan.rays[i])
            row[tvar] = Fraction(1)
            ub_rows.append(row)
            ub_rhs.append(0)
        for i in set(b) - set(a):
            row = diff_row(ia, ib, fan.rays[i])
            row[tvar] = Fraction(1)
            ub_rows.append(row)
            ub_rhs.append(0)
    cap = [Fraction(0)] * nvar
    cap[tvar] = Fraction(1)
    ub_rows.append(cap)
    ub_rhs.append(1)
    objective = [0] * nvar
    objective[tvar] = 1
    res = _lp.maximize(objective, ub_rows, ub_rhs, eq_rows, [0] * len(eq_rows))
    if res.status != _lp.OPTIMAL or res.value <= 0:
        return PolarityCertificate(False, reason="no strictly convex support function")
    x = res.x
    support = {mc: tuple(x[i * r:(i + 1) * r]) for i, mc in enumerate(maximal)}
    cert = PolarityCertificate(True, support, res.value)
    if not _check_polarity_certificate(fan, cert):
        raise AssertionError("LP returned a certificate that does not verify")  # pragma: no cover
    return cert


def _check_polarity_certificate(fan: StackyFan, cert: PolarityCertificate) -> bool:
    r = fan.rd.rank
    maximal = list(fan.maximal_cones)
    hull = _span_hull(fan)
    d = hull.dim
    for a, b in combinations(maximal, 2):
        ma, mb = cert.support_function[a], cert.support_function[b]
        common = set(a) & set(b)
        if any(la.dot(la.sub(ma, mb), fan.rays[i]) != 0 for i in common):
            return False
        if common and la.rank([fan.rays[i] for i in common], r) == d - 1:
            if any(la.dot(la.sub(ma, mb), fan.rays[i]) <= 0 for i in set(a) - common):
                return False
            if any(la.dot(la.sub(mb, ma), fan.rays[i]) <= 0 for i in set(b) - common):
                return False
    return True


# --- Weyl saturation --------------------------------------------------------


def weyl_saturation(fan: StackyFan) -> tuple:
    """Distinct maximal cones w sigma over all w in W and maximal sigma."""
    out = set()
    for w in weyl_group(fan.rd):
        for mc in fan.maximal_cones:
            out.add(ph.linear_transform(fan.cone_of(mc), w.matrix))
    return tuple(sorted(out, key=lambda c: c.rays))


def _check_is_fan(cones: Sequence[ph.ConeQ]) -> bool:
    for a, b in combinations(cones, 2):
        if not (set(a.rays) & set(b.rays)) and _disjoint_hint(a, b):
            continue
        meet = ph.intersect(a, b)
        if meet not in _faces(a) or meet not in _faces(b):
            return False
    return True


def _disjoint_hint(a: ph.ConeQ, b: ph.ConeQ) -> bool:
    """True when a facet hyperplane of ``a`` strictly separates b from a minus {0}.

    Then a meets b only in {0}, which is a common face of strongly convex cones.
    """
    if not (a.is_strongly_convex and b.is_strongly_convex):
        return False
    for f in a.facet_normals:
        if all(la.dot(f, g) < 0 for g in b.rays):
            return True
    for f in b.facet_normals:
        if all(la.dot(f, g) < 0 for g in a.rays):
            return True
    return False


def w_support_convex(fan: StackyFan) -> bool:
    """Whether W Sigma is a fan with convex support.

    Only full-dimensional supports are handled; lower-dimensional ones raise
    :class:`LowerDimensionalSupport`.
    """
    cones = weyl_saturation(fan)
    r = fan.rd.rank
    if max(c.dim for c in cones) < r:
        raise LowerDimensionalSupport("support of W Sigma is not full-dimensional")
    rays = sorted({v for c in cones for v in c.rays})
    if not _check_is_fan(cones):
        raise FanError("W Sigma is not a fan")
    hull = ph.cone(rays, r)
    return _union_is_hull(cones, hull)


def _w_support_convex_relative(fan: StackyFan) -> bool:
    cones = weyl_saturation(fan)
    rays = sorted({v for c in cones for v in c.rays})
    hull = ph.cone(rays, fan.rd.rank) if rays else ph.zero_cone(fan.rd.rank)
    return _union_is_hull(cones, hull)


# --- classification ---------------------------------------------------------


@dataclass(frozen=True)
class StackClassification:
    simplicial: dict
    proper: bool
    polar: bool
    w_support_convex: bool
    dm_tame: bool
    artin_good_moduli: bool
    git_semiprojective: bool

    def as_dict(self) -> dict:
        return {
            "simplicial": {",".join(map(str, k)): v for k, v in self.simplicial.items()},
            "proper": self.proper,
            "polar": self.polar,
            "w_support_convex": self.w_support_convex,
            "DM_tame": self.dm_tame,
            "artin_good_moduli": self.artin_good_moduli,
            "git_semiprojective": self.git_semiprojective,
        }


def classify(fan: StackyFan) -> StackClassification:
    _require_valid(fan)
    simplicial = {c: ph.is_simplicial(fan.cone_of(c)) for c in fan.cones}
    polar = bool(is_polar(fan))
    try:
        wconv = w_support_convex(fan)
    except LowerDimensionalSupport:
        # convexity relative to the span of the support
        wconv = _w_support_convex_relative(fan)
    return StackClassification(
        simplicial=simplicial,
        proper=support_is_full_chamber(fan),
        polar=polar,
        w_support_convex=wconv,
        dm_tame=all(simplicial.values()),
        artin_good_moduli=True,
        git_semiprojective=polar and wconv,
    )


# --- completion of a single cone -------------------------------------------


@dataclass(frozen=True)
class Completion:
    fan: StackyFan
    sigma_indices: tuple
    full_cone: ph.ConeQ
    v_bar: tuple
    epsilon: Fraction
    polyhedron: ph.PolyhedronQ
    nonprimitive_input_rays: tuple


def _combinatorial_type(fan: StackyFan) -> tuple:
    return (fan.ray_vectors, fan.maximal_cones)


def _full_dimensional_cone(sigma: ph.ConeQ, rd: RootDatum, max_halvings: int = 20) -> ph.ConeQ:
    r = rd.rank
    if sigma.dim == r:
        return sigma
    center = (0,) * r
    for v in sigma.rays:
        center = la.add(center, v)
    candidates = list(fundamental_coweights(rd))
    for z in central_cocharacters(rd):
        candidates += [z, la.neg(z)]
    current = sigma
    for cand in candidates:
        if current.dim == r:
            break
        if la.in_span(list(current.generators), cand, r):
            continue
        delta = Fraction(1)
        for _ in range(max_halvings + 1):
            v = tuple(Fraction(a) + delta * b for a, b in zip(cand, center))
            bigger = ph.cone(list(current.rays) + [v], r)
            if (
                bigger.is_strongly_convex
                and all(is_dominant(rd, g) for g in bigger.rays)
                and sigma in _faces(bigger)
            ):
                current = bigger
                break
            delta /= 2
    if current.dim != r:
        raise CompletionError("could not extend the cone to full dimension within the delta budget")
    return current


def _v_bar(full: ph.ConeQ, rd: RootDatum) -> tuple:
    dual = ph.dual_cone(full)
    g = (0,) * rd.rank
    for v in dual.rays:
        g = la.add(g, v)
    two_rho = sum_of_positive_roots(rd)
    t = 0
    while True:
        v = la.add(g, la.scale(t, two_rho))
        if all(la.dot(v, c) > 0 for c in rd.simple_coroots):
            return v
        t += 1


def _completion_polyhedron(full: ph.ConeQ, rd: RootDatum, v_bar: tuple, eps: Fraction) -> ph.PolyhedronQ:
    r = rd.rank
    p_tilde = ph.shift(ph.negate(ph.dual_cone(full)), v_bar)
    q_ineqs = [(c, (1 + eps) * la.dot(v_bar, c)) for c in rd.simple_coroots]
    for z in central_cocharacters(rd):
        for sgn in (z, la.neg(z)):
            q_ineqs.append((sgn, (1 + eps) * abs(la.dot(v_bar, sgn)) + 1))
    q = ph.polyhedron(q_ineqs, r, ph.CHARACTER)
    return ph.intersect_polyhedra(p_tilde, q)


def _restricted_fan(
    poly: ph.PolyhedronQ, rd: RootDatum, sigma: ph.ConeQ, sigma_betas: dict
) -> tuple[StackyFan, tuple]:
    r = rd.rank
    ch = chamber(rd)
    nf = ph.normal_fan(poly)
    pieces = []
    for c in nf.maximal_cones:
        piece = ph.intersect(c, ch)
        if piece.dim == r and piece not in pieces:
            pieces.append(piece)
    all_rays = sorted({v for p in pieces for v in p.rays})
    ordered = [v for v in sigma.rays] + [v for v in all_rays if v not in sigma.rays]
    index = {v: i for i, v in enumerate(ordered)}
    betas = [sigma_betas.get(v, v) for v in ordered]
    maximal = [sorted(index[v] for v in p.rays) for p in pieces]
    fan = stacky_fan(rd, betas, maximal)
    sigma_idx = tuple(sorted(index[v] for v in sigma.rays))
    return fan, sigma_idx


def completion_details(
    sigma: ph.ConeQ,
    rd: RootDatum,
    ray_vectors: Optional[Sequence[Sequence[int]]] = None,
    max_halvings: int = 30,
) -> Completion:
    """Embed a stacky cone in the chamber into a polar fan whose Weyl
    saturation has convex support.

    ``ray_vectors`` (aligned with ``sigma.rays``) default to the primitive
    generators.  The result is fully verified; failure raises
    :class:`CompletionError` instead of returning an unchecked fan.
    """
    r = rd.rank
    if sigma.rank != r or sigma.space != ph.COCHARACTER:
        raise CompletionError("cone must live in the cocharacter space of the root datum")
    if not sigma.is_strongly_convex:
        raise CompletionError("cone is not strongly convex")
    if not all(is_dominant(rd, g) for g in sigma.rays):
        raise CompletionError("cone is not contained in the dominant chamber")
    if ray_vectors is None:
        ray_vectors = sigma.rays
    ray_vectors = [tuple(b) for b in ray_vectors]
    if len(ray_vectors) != len(sigma.rays) or any(la.primitive(b) != v for b, v in zip(ray_vectors, sigma.rays)):
        raise CompletionError("ray vectors must be positive multiples of the cone's rays, in the same order")
    sigma_betas = dict(zip(sigma.rays, ray_vectors))
    nonprimitive = tuple(b for b, v in zip(ray_vectors, sigma.rays) if b != v)
    full = _full_dimensional_cone(sigma, rd)
    v_bar = _v_bar(full, rd)
    eps = Fraction(1)
    previous = None
    for _ in range(max_halvings + 1):
        poly = _completion_polyhedron(full, rd, v_bar, eps)
        fan, sigma_idx = _restricted_fan(poly, rd, sigma, sigma_betas)
        ctype = _combinatorial_type(fan)
        if ctype == previous and _completion_verifies(fan, sigma, sigma_idx):
            return Completion(fan, sigma_idx, full, v_bar, eps, poly, nonprimitive)
        previous = ctype
        eps /= 2
    raise CompletionError("no verified completion within the epsilon budget")


def _completion_verifies(fan: StackyFan, sigma: ph.ConeQ, sigma_idx: tuple) -> bool:
    if not validate(fan).valid:
        return False
    if sigma_idx not in fan.cones or fan.cone_of(sigma_idx) != sigma:
        return False
    if not is_polar(fan):
        return False
    try:
        return w_support_convex(fan)
    except (LowerDimensionalSupport, FanError):
        return False


def complete_cone(
    sigma: ph.ConeQ, rd: RootDatum, ray_vectors: Optional[Sequence[Sequence[int]]] = None
) -> StackyFan:
    return completion_details(sigma, rd, ray_vectors).fan
