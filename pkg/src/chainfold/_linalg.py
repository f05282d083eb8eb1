"""Exact linear algebra over the rationals.

Matrices are sequences of rows; entries are ints or Fractions.  Nothing in
here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Vec = tuple
Matrix = Sequence[Sequence]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def neg(v: Sequence) -> tuple:
    return tuple(-a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m: Matrix) -> tuple:
    return tuple(zip(*m))


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def as_fraction_vec(v: Sequence) -> tuple:
    return tuple(Fraction(a) for a in v)


def rref(m: Matrix, ncols: Optional[int] = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [[Fraction(a) for a in row] for row in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Matrix, ncols: Optional[int] = None) -> int:
    if not m:
        return 0
    return len(rref(m, ncols)[1])


def nullspace(m: Matrix, ncols: int) -> list[tuple]:
    """Basis of {x : m x = 0} as primitive integer vectors."""
    if not m:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    rows, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def solve(m: Matrix, b: Sequence, ncols: int) -> Optional[tuple]:
    """One rational solution of m x = b, or None when inconsistent."""
    aug = [list(row) + [rhs] for row, rhs in zip(m, b)]
    if not aug:
        return tuple(Fraction(0) for _ in range(ncols))
    rows, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Matrix) -> tuple:
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, identity(n))]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(_normalize(a) for a in row[n:]) for row in rows)


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(a) for a in v]
    den = 1
    for a in fr:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def primitive_line(v: Sequence) -> tuple:
    """Primitive vector with positive leading entry (a canonical line generator)."""
    p = primitive(v)
    for a in p:
        if a != 0:
            return p if a > 0 else neg(p)
    return p


def integer_rref(vectors: Sequence[Sequence], ncols: int) -> tuple:
    """Canonical integer basis of the rational span of ``vectors``."""
    if not vectors:
        return ()
    rows, _ = rref(vectors, ncols)
    return tuple(sorted(primitive_line(r) for r in rows))


def in_span(vectors: Sequence[Sequence], x: Sequence, ncols: int) -> bool:
    if is_zero(x):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [list(x)], ncols) == rank(vectors, ncols)


def fmt(x) -> str | int:
    """JSON form of a rational: ints stay ints, others become 'p/q'."""
    x = Fraction(x)
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")
