"""Cox quotient data of a (stacky) fan.

The ray vectors give a map of tori G_m^N -> T, e_i -> beta_i.  Its kernel L
is a diagonalisable group whose character group is Z^N / B Z^r, where B is
the N x r matrix with rows beta_i: free of rank N - rank(B), with torsion
given by the invariant factors of B.  The open set A^0 is the union over
cones sigma of the loci where every coordinate not belonging to sigma is
nonzero, so a point stratum is described by the set S of vanishing
coordinates.

Works for any fan in any lattice; pass a torus root datum for plain toric
input.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from . import _linalg as la
from . import polyhedral as ph
from .normal_form import SmithForm, integer_kernel, smith_normal_form
from .stacky_fan import StackyFan, _require_valid, is_polar


class StratumNotAllowed(ValueError):
    pass


@dataclass(frozen=True)
class CoxData:
    n_rays: int
    rank: int
    matrix: tuple  # rows beta_i
    free_rank: int
    invariant_factors: tuple  # only the entries > 1
    kernel_basis: tuple  # Z-basis of {m : sum m_i beta_i = 0}
    normal_form: SmithForm
    exact_at_T: bool

    @property
    def matrix_rank(self) -> int:
        return self.normal_form.rank


def cox_sequence(source: Union[StackyFan, Sequence[Sequence[int]]], rank: int | None = None) -> CoxData:
    """Kernel of G_m^N -> T for the fan's ray vectors (or a raw list)."""
    if isinstance(source, StackyFan):
        rays, r = source.ray_vectors, source.rd.rank
    else:
        rays = tuple(tuple(int(a) for a in b) for b in source)
        r = rank if rank is not None else (len(rays[0]) if rays else None)
        if r is None:
            raise ValueError("the rank is needed for an empty ray list")
    if any(len(b) != r for b in rays):
        raise ValueError("ray vectors of unequal length")
    if any(la.is_zero(b) for b in rays):
        raise ValueError("ray vectors must be nonzero")
    n = len(rays)
    snf = smith_normal_form(rays, r)
    factors = tuple(d for d in snf.invariant_factors if d > 1)
    transpose = la.transpose(rays) if rays else tuple(() for _ in range(r))
    kernel = integer_kernel(transpose, n) if n else ()
    return CoxData(
        n_rays=n,
        rank=r,
        matrix=rays,
        free_rank=n - snf.rank,
        invariant_factors=factors,
        kernel_basis=kernel,
        normal_form=snf,
        exact_at_T=snf.rank == r,
    )


def vanishing_allowed(fan: StackyFan, s: Sequence[int]) -> bool:
    """Whether a point may have exactly the coordinates in ``s`` equal to 0."""
    want = set(s)
    if any(not 0 <= i < fan.n_rays for i in want):
        raise IndexError("stratum refers to a ray index out of range")
    return any(want <= set(mc) for mc in fan.maximal_cones)


def irrelevant_collections(fan: StackyFan) -> tuple:
    """Inclusion-minimal forbidden vanishing sets, as sorted index tuples."""
    out = []
    n = fan.n_rays
    for k in range(1, n + 1):
        for sub in combinations(range(n), k):
            if vanishing_allowed(fan, sub):
                continue
            if all(vanishing_allowed(fan, sub[:j] + sub[j + 1:]) for j in range(k)):
                out.append(sub)
    return tuple(out)


def stratum_stabilizer(cox: CoxData, fan: StackyFan, s: Sequence[int]) -> tuple:
    """(free rank, invariant factors) of the stabiliser in L of a point with
    zero set exactly ``s``: the kernel of G_m^S -> T."""
    s = sorted(set(s))
    if not vanishing_allowed(fan, s):
        raise StratumNotAllowed(f"vanishing set {s} is not allowed by the fan")
    if not s:
        return 0, ()
    rows = [cox.matrix[i] for i in s]
    snf = smith_normal_form(rows, cox.rank)
    return len(s) - snf.rank, tuple(d for d in snf.invariant_factors if d > 1)


def maximal_allowed_sets(fan: StackyFan) -> tuple:
    return tuple(sorted(fan.maximal_cones))


def all_stabilizers_finite(cox: CoxData, fan: StackyFan) -> bool:
    return all(stratum_stabilizer(cox, fan, mc)[0] == 0 for mc in fan.maximal_cones)


@dataclass(frozen=True)
class QuotientDims:
    affine_dim: int  # N
    torus_dim: int  # r
    group_dim: int  # N
    quotient_dim: int
    classical_applies: bool
    classical_quotient_dim: int


def equivariant_quotient_dims(cox: CoxData) -> QuotientDims:
    """Dimensions for X = (A^0 x T) / G_beta; the classical presentation
    A^0 / L also applies exactly when the ray vectors span Lambda_Q."""
    n, r = cox.n_rays, cox.rank
    return QuotientDims(
        affine_dim=n,
        torus_dim=r,
        group_dim=n,
        quotient_dim=n + r - n,
        classical_applies=cox.exact_at_T,
        classical_quotient_dim=n - cox.free_rank,
    )


@dataclass(frozen=True)
class GitFlags:
    applicable: bool
    semistable_equals_stable: bool


def git_flags(fan: StackyFan) -> GitFlags:
    _require_valid(fan, require_dominant=False)
    return GitFlags(
        applicable=bool(is_polar(fan)),
        semistable_equals_stable=all(ph.is_simplicial(fan.cone_of(c)) for c in fan.cones),
    )
