"""Lattice-level data of the Vinberg monoid S_G.

Characters of the enhanced group (G x T)/Z_G are pairs (lambda, mu) in V^2
with mu - lambda in the root lattice.  The coordinate ring of S_G is graded
by the pairs that are dominant and lie in the cone Q_G, where mu - lambda
is a nonnegative combination of simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import _linalg as la
from .root_datum import RootDatum, is_dominant, is_dominant_character, positive_roots
from .stacky_fan import StackyFan

LAMBDA_DOMINANT = "lambda"
MU_DOMINANT = "mu"
BOTH_DOMINANT = "both"
DOMINANCE_CONVENTIONS = (LAMBDA_DOMINANT, MU_DOMINANT, BOTH_DOMINANT)


@dataclass(frozen=True)
class VinbergLatticeData:
    rd: RootDatum
    dominance: str = LAMBDA_DOMINANT

    def __post_init__(self):
        if self.dominance not in DOMINANCE_CONVENTIONS:
            raise ValueError(f"unknown dominance convention {self.dominance!r}")

    @property
    def s(self) -> int:
        return self.rd.semisimple_rank

    @property
    def enhanced_rank(self) -> int:
        return 2 * self.rd.rank

    def root_coefficients(self, chi: Sequence[int]) -> Optional[tuple]:
        """Rational m with chi = sum m_i alpha_i, or None outside the rational root span."""
        if len(chi) != self.rd.rank:
            raise ValueError("dimension mismatch")
        if self.s == 0:
            return () if la.is_zero(chi) else None
        return la.solve(la.transpose(self.rd.simple_roots), chi, self.s)

    def enh_lattice_member(self, lam: Sequence[int], mu: Sequence[int]) -> Optional[tuple]:
        m = self.root_coefficients(la.sub(mu, lam))
        if m is None or any(x.denominator != 1 for x in m):
            return None
        return tuple(int(x) for x in m)

    def in_QG(self, lam: Sequence[int], mu: Sequence[int]) -> tuple[bool, Optional[tuple]]:
        m = self.enh_lattice_member(lam, mu)
        return (m is not None and all(x >= 0 for x in m)), m

    def in_SG_support(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        ok, _ = self.in_QG(lam, mu)
        if not ok:
            return False
        if self.dominance == LAMBDA_DOMINANT:
            return is_dominant_character(self.rd, lam)
        if self.dominance == MU_DOMINANT:
            return is_dominant_character(self.rd, mu)
        return is_dominant_character(self.rd, lam) and is_dominant_character(self.rd, mu)

    def query(self, lam: Sequence[int], mu: Sequence[int]) -> dict:
        m = self.enh_lattice_member(lam, mu)
        in_qg, _ = self.in_QG(lam, mu)
        return {
            "in_lattice": m is not None,
            "m": list(m) if m is not None else None,
            "in_QG": in_qg,
            "in_support": self.in_SG_support(lam, mu),
        }


@dataclass(frozen=True)
class AbelianizationData:
    """The affine toric variety A = S_G // (G x G): the chamber in the
    adjoint coweight lattice Z^s, whose rays are the fundamental coweights."""

    dimension: int
    rays: tuple
    cone: tuple
    smooth: bool


def abelianization_data(rd: RootDatum) -> AbelianizationData:
    s = rd.semisimple_rank
    rays = la.identity(s)
    det = 1  # standard basis
    return AbelianizationData(s, rays, tuple(range(s)), abs(det) == 1)


def beta_to_A(rd: RootDatum, beta: Sequence[int]) -> tuple:
    """Exponents of the monoid map A^1 -> A induced by a dominant cocharacter."""
    if not is_dominant(rd, beta):
        raise ValueError(f"{tuple(beta)} is not dominant")
    return tuple(la.dot(a, beta) for a in rd.simple_roots)


@dataclass(frozen=True)
class DimensionLedger:
    dim_G: int
    n_positive_roots: int
    dim_G_enh: int
    dim_S_G: int
    dim_A: int
    n_rays: int
    dim_S_G_beta: int
    stack_dim: int


def cox_vinberg_dims(fan: StackyFan) -> DimensionLedger:
    rd = fan.rd
    npos = len(positive_roots(rd))
    r, s = rd.rank, rd.semisimple_rank
    dim_g = r + 2 * npos
    dim_center = r - s
    dim_enh = dim_g + r - dim_center
    n = fan.n_rays
    dim_sgb = n + dim_enh - s
    return DimensionLedger(
        dim_G=dim_g,
        n_positive_roots=npos,
        dim_G_enh=dim_enh,
        dim_S_G=dim_enh,
        dim_A=s,
        n_rays=n,
        dim_S_G_beta=dim_sgb,
        stack_dim=dim_sgb - n,
    )
