"""Splitting types of framed bundle chains and their stability.

A framed chain of n+1 lines carries one cocharacter per node, so its
isomorphism class is a tuple in Lambda^n modulo the diagonal Weyl action.
Given a stacky fan, the tuple is stable when a single Weyl element sends it
to distinct ray vectors of one cone, listed in the fan's chosen order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from . import _linalg as la
from .root_datum import RootDatum, WeylElement, is_dominant, weyl_group
from .stacky_fan import StackyFan, _require_valid, apply_longest, classify, orbit_poset

# instability reasons, from least to most "nearly stable"
ZERO_ENTRY = "zero_entry"
REPEATED_ENTRY = "repeated_entry"
CHAMBER = "chamber"
NOT_RAY_VECTORS = "not_ray_vectors"
NO_COMMON_CONE = "no_common_cone"
ORDER = "order"
_REASON_RANK = {CHAMBER: 0, NOT_RAY_VECTORS: 1, NO_COMMON_CONE: 2, ORDER: 3}


@dataclass(frozen=True)
class SplittingType:
    rd: RootDatum
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(int(a) for a in e) for e in self.entries)
        for e in entries:
            if len(e) != self.rd.rank:
                raise ValueError(f"entry {e} does not have length {self.rd.rank}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def act(self, w: WeylElement) -> "SplittingType":
        return SplittingType(self.rd, tuple(w.act(e) for e in self.entries))


@dataclass(frozen=True)
class EquivariantChainClass:
    """Weights (rho_0, ..., rho_n) at the fixed points of an unframed
    equivariant chain of n lines, up to diagonal W."""

    rd: RootDatum
    fixed_point_weights: tuple

    def __post_init__(self):
        weights = tuple(tuple(int(a) for a in e) for e in self.fixed_point_weights)
        if len(weights) < 2:
            raise ValueError("a chain has at least two fixed points")
        object.__setattr__(self, "fixed_point_weights", weights)

    def clutchings(self) -> tuple:
        """Clutching cocharacter of each line, read from p_+ towards p_-."""
        w = self.fixed_point_weights
        return tuple(clutching(w[k], w[k + 1]) for k in range(len(w) - 1))

    def canonical(self) -> tuple:
        return _lex_min(self.rd, self.fixed_point_weights)

    def splitting_type(self) -> SplittingType:
        """Node weights of a framed chain; the endpoint weights must vanish."""
        w = self.fixed_point_weights
        if not (la.is_zero(w[0]) and la.is_zero(w[-1])):
            raise ValueError("framing forces zero weights at both endpoints")
        return SplittingType(self.rd, w[1:-1])


@dataclass(frozen=True)
class StabilityWitness:
    w: WeylElement
    cone: int
    ray_indices: tuple

    def check(self, st: SplittingType, fan: StackyFan) -> bool:
        if len(self.ray_indices) != len(st.entries):
            return False
        if any(self.w.act(e) != fan.ray_vectors[i] for e, i in zip(st.entries, self.ray_indices)):
            return False
        pos = [fan.position[i] for i in self.ray_indices]
        if any(a >= b for a, b in zip(pos, pos[1:])):
            return False
        return set(self.ray_indices) <= set(fan.cones[self.cone])


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    witness: Optional[StabilityWitness] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.stable


def clutching(rho_plus: Sequence[int], rho_minus: Sequence[int]) -> tuple:
    if len(rho_plus) != len(rho_minus):
        raise ValueError("dimension mismatch")
    return la.sub(rho_plus, rho_minus)


def _lex_min(rd: RootDatum, entries: tuple) -> tuple:
    best = None
    for w in weyl_group(rd):
        img = tuple(w.act(e) for e in entries)
        flat = tuple(a for e in img for a in e)
        if best is None or flat < best[0]:
            best = (flat, img)
    return best[1]


def canonicalize(st: SplittingType) -> SplittingType:
    """Lexicographically least tuple in the diagonal W-orbit."""
    if not st.entries:
        return st
    return SplittingType(st.rd, _lex_min(st.rd, st.entries))


def same_chamber_witnesses(st: SplittingType) -> tuple:
    """All w in W putting every entry in the dominant chamber."""
    return tuple(w for w in weyl_group(st.rd) if all(is_dominant(st.rd, w.act(e)) for e in st.entries))


def _smallest_cone_containing(fan: StackyFan, indices: Sequence[int]) -> Optional[int]:
    want = set(indices)
    for k, c in enumerate(fan.cones):
        if want <= set(c):
            return k
    return None


def is_stable(st: SplittingType, fan: StackyFan) -> StabilityResult:
    """Stability of a splitting type; returns a witness when stable and the
    nearest failure otherwise."""
    if st.rd != fan.rd:
        raise ValueError("splitting type and fan use different root data")
    if not st.entries:
        return StabilityResult(True, StabilityWitness(fan.rd.identity(), 0, ()))
    if any(la.is_zero(e) for e in st.entries):
        return StabilityResult(False, reason=ZERO_ENTRY)
    if len(set(st.entries)) != len(st.entries):
        return StabilityResult(False, reason=REPEATED_ENTRY)
    reason = CHAMBER
    lookup = fan.ray_index
    for w in weyl_group(fan.rd):
        images = [w.act(e) for e in st.entries]
        if not all(is_dominant(fan.rd, x) for x in images):
            continue
        idx = [lookup.get(x) for x in images]
        if any(i is None for i in idx):
            reason = max(reason, NOT_RAY_VECTORS, key=_REASON_RANK.get)
            continue
        k = _smallest_cone_containing(fan, idx)
        if k is None:
            reason = max(reason, NO_COMMON_CONE, key=_REASON_RANK.get)
            continue
        pos = [fan.position[i] for i in idx]
        if any(a >= b for a, b in zip(pos, pos[1:])):
            reason = ORDER
            continue
        return StabilityResult(True, StabilityWitness(w, k, tuple(idx)))
    return StabilityResult(False, reason=reason)


def enumerate_stable(fan: StackyFan) -> tuple:
    """One splitting type per stable class.

    Each class is represented by its ray vectors in the fan's order; this is
    the unique representative with dominant entries.
    """
    _require_valid(fan)
    subsets = set()
    for mc in fan.maximal_cones:
        for k in range(len(mc) + 1):
            for sub in combinations(mc, k):
                subsets.add(tuple(sorted(sub, key=fan.position.get)))
    ordered = sorted(subsets, key=lambda s: (len(s), [fan.position[i] for i in s]))
    return tuple(SplittingType(fan.rd, tuple(fan.ray_vectors[i] for i in s)) for s in ordered)


def stable_index_sets(fan: StackyFan) -> tuple:
    """The stable classes as sets of ray indices (independent of the ordering)."""
    return tuple(sorted((tuple(sorted(fan.ray_index[e] for e in st.entries)) for st in enumerate_stable(fan)), key=lambda s: (len(s), s)))


@dataclass(frozen=True)
class ModuliReport:
    classification: object
    orbit_poset: object
    stable: tuple
    witnesses: tuple

    @property
    def summary(self) -> str:
        c = self.classification
        if self.orbit_poset.size == 1:
            return "the group itself"
        if c.dm_tame:
            kind = "proper tame (Deligne-Mumford) stack" if c.proper else "separated tame (Deligne-Mumford) stack"
        else:
            kind = "Artin stack with a good moduli space"
            if c.proper:
                kind = "proper " + kind
        return kind


def moduli_report(fan: StackyFan) -> ModuliReport:
    cls = classify(fan)
    poset = orbit_poset(apply_longest(fan))
    stable = enumerate_stable(fan)
    witnesses = tuple(is_stable(st, fan).witness for st in stable)
    return ModuliReport(cls, poset, stable, witnesses)
