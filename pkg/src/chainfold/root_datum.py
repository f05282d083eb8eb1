"""Root data of split reductive groups and Weyl group computations.

Both lattices are fixed to Z^r with the standard dot product as pairing:
cocharacters (Lambda) and characters (V) are plain integer tuples.  A
simple reflection acts on cocharacters by

    s_i(lam) = lam - <alpha_i, lam> alpha_i^vee

and on characters by the inverse transpose of that matrix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import _linalg as la

DEFAULT_WEYL_CAP = 51840

SIMPLY_CONNECTED = "simply_connected"
ADJOINT = "adjoint"
GENERAL_LINEAR = "general_linear"
ISOGENIES = (SIMPLY_CONNECTED, ADJOINT, GENERAL_LINEAR)


class RootDatumError(ValueError):
    """Raised for unknown Cartan types, bad ranks and invalid explicit data."""


class WeylGroupTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class WeylElement:
    """An element of W, stored as a word in simple reflections and as the
    integer matrix of its action on the cocharacter lattice.

    ``word = [i1, ..., ik]`` means ``s_i1 s_i2 ... s_ik`` (the last letter acts
    first).
    """

    word: tuple = field(compare=False)
    matrix: tuple = field()

    def __len__(self) -> int:
        return len(self.word)

    def act(self, lam: Sequence[int]) -> tuple:
        return la.mat_vec(self.matrix, lam)

    def act_on_characters(self, chi: Sequence) -> tuple:
        # inverse transpose; inverse of an integer matrix of det +-1 is integral
        return la.mat_vec(la.transpose(la.inverse(self.matrix)), chi)

    def is_identity(self) -> bool:
        return self.matrix == la.identity(len(self.matrix))


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_roots: tuple
    simple_coroots: tuple
    label: Optional[str] = field(default=None, compare=False)
    weyl_cap: int = field(default=DEFAULT_WEYL_CAP, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "simple_roots", tuple(tuple(int(a) for a in v) for v in self.simple_roots))
        object.__setattr__(self, "simple_coroots", tuple(tuple(int(a) for a in v) for v in self.simple_coroots))
        _check_root_datum(self)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @property
    def central_rank(self) -> int:
        return self.rank - self.semisimple_rank

    @cached_property
    def cartan_matrix(self) -> tuple:
        """C[i][j] = <alpha_i, alpha_j^vee>."""
        return tuple(
            tuple(la.dot(a, c) for c in self.simple_coroots) for a in self.simple_roots
        )

    @cached_property
    def _generators(self) -> tuple:
        r = self.rank
        gens = []
        for a, c in zip(self.simple_roots, self.simple_coroots):
            gens.append(
                tuple(
                    tuple((1 if i == j else 0) - c[i] * a[j] for j in range(r))
                    for i in range(r)
                )
            )
        return tuple(gens)

    def generator_matrix(self, i: int) -> tuple:
        """Matrix of s_i on Lambda (1-based index)."""
        _check_index(self, i)
        return self._generators[i - 1]

    def pairing(self, chi: Sequence, lam: Sequence):
        _check_dim(self, chi)
        _check_dim(self, lam)
        return la.dot(chi, lam)

    def identity(self) -> WeylElement:
        return WeylElement((), la.identity(self.rank))

    def __repr__(self) -> str:
        name = self.label or "explicit"
        return f"RootDatum({name}, rank={self.rank}, s={self.semisimple_rank})"


def _check_dim(rd: RootDatum, v: Sequence) -> None:
    if len(v) != rd.rank:
        raise ValueError(f"vector {tuple(v)} has length {len(v)}, expected {rd.rank}")


def _check_index(rd: RootDatum, i: int) -> None:
    if not 1 <= i <= rd.semisimple_rank:
        raise IndexError(f"simple reflection index {i} out of range 1..{rd.semisimple_rank}")


def _check_root_datum(rd: RootDatum) -> None:
    r = rd.rank
    if r < 1:
        raise RootDatumError("rank must be positive")
    s = len(rd.simple_roots)
    if len(rd.simple_coroots) != s:
        raise RootDatumError("need as many simple coroots as simple roots")
    if s > r:
        raise RootDatumError("more simple roots than the rank")
    for v in rd.simple_roots + rd.simple_coroots:
        if len(v) != r:
            raise RootDatumError(f"vector {v} does not have length {r}")
    if s and (la.rank(rd.simple_roots, r) < s or la.rank(rd.simple_coroots, r) < s):
        raise RootDatumError("simple roots and coroots must be linearly independent")
    c = [[la.dot(a, cv) for cv in rd.simple_coroots] for a in rd.simple_roots]
    if not _is_finite_cartan(c):
        raise RootDatumError(f"not a Cartan matrix of finite type: {c}")


def _is_finite_cartan(c: list[list[int]]) -> bool:
    n = len(c)
    for i in range(n):
        if c[i][i] != 2:
            return False
        for j in range(n):
            if i != j:
                if c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0):
                    return False
    # symmetrise: d_i c_ij = d_j c_ji; solve along a spanning forest
    d: list[Optional[Fraction]] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and c[i][j] != 0:
                    want = d[i] * c[i][j] / c[j][i]
                    if d[j] is None:
                        d[j] = want
                        stack.append(j)
                    elif d[j] != want:
                        return False
    sym = [[d[i] * c[i][j] for j in range(n)] for i in range(n)]
    # Sylvester: all leading principal minors positive
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            return False
    return True


def _det(m: list[list]) -> Fraction:
    m = [[Fraction(a) for a in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


# Euclidean realisations of the simple roots; Cartan integers come out of
# 2 (a_i, a_j) / (a_j, a_j).
def _euclidean_simple_roots(series: str, n: int) -> list[tuple]:
    e = lambda i, dim: tuple(1 if k == i else 0 for k in range(dim))  # noqa: E731
    if series == "A":
        if n < 1:
            raise RootDatumError("A_n needs n >= 1")
        return [la.sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
    if series == "B":
        if n < 2:
            raise RootDatumError("B_n needs n >= 2")
        return [la.sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [e(n - 1, n)]
    if series == "C":
        if n < 2:
            raise RootDatumError("C_n needs n >= 2")
        return [la.sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [la.scale(2, e(n - 1, n))]
    if series == "D":
        if n < 4:
            raise RootDatumError("D_n needs n >= 4")
        roots = [la.sub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
        roots.append(la.add(e(n - 2, n), e(n - 1, n)))
        return roots
    if series == "G":
        if n != 2:
            raise RootDatumError("G_n exists only for n = 2")
        return [(1, -1, 0), (-2, 1, 1)]
    raise RootDatumError(f"unknown Cartan series {series!r}")


def cartan_matrix(series: str, n: int) -> tuple:
    """C[i][j] = <alpha_i, alpha_j^vee> for the named finite type."""
    roots = _euclidean_simple_roots(series, n)
    return tuple(
        tuple(Fraction(2 * la.dot(a, b), la.dot(b, b)) for b in roots) for a in roots
    )


def build_root_datum(
    series: str,
    rank_of_type: int = 0,
    isogeny: str = ADJOINT,
    extra_central_rank: int = 0,
    weyl_cap: int = DEFAULT_WEYL_CAP,
) -> RootDatum:
    """Root datum of a named group.

    ``series`` is one of A, B, C, D, G or ``"torus"``.  For simply connected
    groups the coroots are the standard basis of Lambda; for adjoint groups
    the fundamental coweights are.  ``general_linear`` with series A and
    rank n gives GL_{n+1}.  ``extra_central_rank`` appends a central torus.
    """
    series = series.strip()
    if series.lower() == "torus":
        if extra_central_rank < 1 and rank_of_type < 1:
            raise RootDatumError("a torus needs positive rank")
        r = extra_central_rank or rank_of_type
        return RootDatum(r, (), (), label=f"T^{r}", weyl_cap=weyl_cap)
    series = series.upper()
    if extra_central_rank < 0:
        raise RootDatumError("extra_central_rank must be nonnegative")
    if isogeny not in ISOGENIES:
        raise RootDatumError(f"unknown isogeny {isogeny!r}")
    if isogeny == GENERAL_LINEAR:
        if series != "A":
            raise RootDatumError("general_linear is only defined for series A")
        m = rank_of_type + 1
        if rank_of_type < 1:
            raise RootDatumError("A_n needs n >= 1")
        roots = [tuple((1 if k == i else -1 if k == i + 1 else 0) for k in range(m)) for i in range(m - 1)]
        coroots = roots
        base_rank = m
        label = f"GL_{m}"
    else:
        c = cartan_matrix(series, rank_of_type)
        n = rank_of_type
        if any(Fraction(x).denominator != 1 for row in c for x in row):
            raise RootDatumError("non-integral Cartan matrix")  # pragma: no cover
        c = [[int(x) for x in row] for row in c]
        if isogeny == SIMPLY_CONNECTED:
            coroots = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
            roots = [tuple(c[i]) for i in range(n)]
        else:
            roots = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
            coroots = [tuple(c[k][j] for k in range(n)) for j in range(n)]
        base_rank = n
        label = f"{series}_{n} {isogeny}"
    pad = (0,) * extra_central_rank
    if extra_central_rank:
        label += f" x T^{extra_central_rank}"
    return RootDatum(
        base_rank + extra_central_rank,
        tuple(tuple(v) + pad for v in roots),
        tuple(tuple(v) + pad for v in coroots),
        label=label,
        weyl_cap=weyl_cap,
    )


def torus(r: int) -> RootDatum:
    return build_root_datum("torus", extra_central_rank=r)


def is_dominant(rd: RootDatum, lam: Sequence) -> bool:
    _check_dim(rd, lam)
    return all(la.dot(a, lam) >= 0 for a in rd.simple_roots)


def is_dominant_character(rd: RootDatum, chi: Sequence) -> bool:
    _check_dim(rd, chi)
    return all(la.dot(chi, c) >= 0 for c in rd.simple_coroots)


def simple_reflection(rd: RootDatum, i: int, lam: Sequence) -> tuple:
    _check_index(rd, i)
    _check_dim(rd, lam)
    a = rd.simple_roots[i - 1]
    c = rd.simple_coroots[i - 1]
    k = la.dot(a, lam)
    return tuple(x - k * y for x, y in zip(lam, c))


def weyl_group(rd: RootDatum) -> tuple:
    """All of W in breadth-first order from the identity (so words are reduced)."""
    return _weyl_group(rd)


_WEYL_CACHE: dict = {}


def _weyl_group(rd: RootDatum) -> tuple:
    key = (rd.rank, rd.simple_roots, rd.simple_coroots, rd.weyl_cap)
    hit = _WEYL_CACHE.get(key)
    if hit is not None:
        return hit
    ident = rd.identity()
    seen = {ident.matrix}
    out = [ident]
    queue = deque([ident])
    gens = rd._generators
    while queue:
        g = queue.popleft()
        for i, m in enumerate(gens, start=1):
            h = la.mat_mul(g.matrix, m)
            if h in seen:
                continue
            seen.add(h)
            if len(out) >= rd.weyl_cap:
                raise WeylGroupTooLarge(f"Weyl group exceeds the cap of {rd.weyl_cap}")
            elt = WeylElement(g.word + (i,), h)
            out.append(elt)
            queue.append(elt)
    result = tuple(out)
    _WEYL_CACHE[key] = result  # idempotent; racing writers store equal values
    return result


def to_dominant(rd: RootDatum, lam: Sequence) -> tuple:
    """Return ``(lam_plus, w)`` with ``w.act(lam) == lam_plus`` dominant.

    ``w`` is the first element in breadth-first order that works.
    """
    _check_dim(rd, lam)
    lam = tuple(lam)
    for w in weyl_group(rd):
        image = w.act(lam)
        if is_dominant(rd, image):
            return image, w
    raise AssertionError("no dominant representative")  # pragma: no cover


def longest_element(rd: RootDatum) -> WeylElement:
    return weyl_group(rd)[-1]


def weyl_orbit(rd: RootDatum, lam: Sequence) -> frozenset:
    _check_dim(rd, lam)
    return frozenset(w.act(lam) for w in weyl_group(rd))


def stabilizer(rd: RootDatum, lam: Sequence) -> tuple:
    lam = tuple(lam)
    return tuple(w for w in weyl_group(rd) if w.act(lam) == lam)


def fundamental_coweights(rd: RootDatum) -> tuple:
    """Rational omega_j^vee in the span of the coroots with <alpha_i, omega_j^vee> = delta_ij."""
    s = rd.semisimple_rank
    if s == 0:
        return ()
    c_inv = la.inverse([[Fraction(x) for x in row] for row in rd.cartan_matrix])
    # omega_j = sum_k x_k alpha_k^vee  with  C x = e_j
    out = []
    for j in range(s):
        x = [c_inv[k][j] for k in range(s)]
        out.append(tuple(sum(Fraction(x[k]) * rd.simple_coroots[k][t] for k in range(s)) for t in range(rd.rank)))
    return tuple(out)


def central_cocharacters(rd: RootDatum) -> tuple:
    """Integer basis of the rational subspace where every simple root vanishes."""
    if not rd.simple_roots:
        return la.identity(rd.rank)
    return tuple(la.nullspace(rd.simple_roots, rd.rank))


def positive_roots(rd: RootDatum) -> tuple:
    """Positive roots in V, as the W-saturation of the simple roots."""
    s = rd.semisimple_rank
    if s == 0:
        return ()
    roots = set()
    for w in weyl_group(rd):
        for a in rd.simple_roots:
            roots.add(w.act_on_characters(a))
    pos = []
    basis = la.transpose(rd.simple_roots)
    for beta in roots:
        coeffs = la.solve(basis, beta, s)
        if all(c >= 0 for c in coeffs):
            pos.append(tuple(int(x) for x in beta))
    return tuple(sorted(pos))


def sum_of_positive_roots(rd: RootDatum) -> tuple:
    """2 rho, a regular dominant character."""
    total = (0,) * rd.rank
    for beta in positive_roots(rd):
        total = la.add(total, beta)
    return total


def explicit_root_datum(rank: int, simple_roots, simple_coroots, label: Optional[str] = None) -> RootDatum:
    return RootDatum(rank, tuple(map(tuple, simple_roots)), tuple(map(tuple, simple_coroots)), label=label)
