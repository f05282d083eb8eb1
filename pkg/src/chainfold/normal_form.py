"""Smith normal form of integer matrices with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SmithForm:
    """``left @ matrix @ right == diagonal`` with ``left``, ``right`` unimodular.

    The nonzero diagonal entries are positive and each divides the next.
    """

    diagonal: tuple
    left: tuple
    right: tuple
    rank: int

    @property
    def invariant_factors(self) -> tuple:
        return tuple(self.diagonal[i][i] for i in range(self.rank))


def _eye(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    left = _eye(m)
    right = _eye(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in a:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j] != 0]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold in any entry the pivot does not divide
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t] != 0),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    return SmithForm(
        tuple(tuple(r) for r in a),
        tuple(tuple(r) for r in left),
        tuple(tuple(r) for r in right),
        t,
    )


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> tuple:
    """Basis of {x in Z^ncols : matrix x = 0}, in Hermite-reduced form."""
    snf = smith_normal_form(matrix, ncols)
    basis = [tuple(snf.right[i][j] for i in range(ncols)) for j in range(snf.rank, ncols)]
    return hermite_rows(basis, ncols)


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> tuple:
    """Row-style Hermite normal form of a full-rank set of integer rows.

    Positive pivots, entries above each pivot reduced into [0, pivot).
    Gives a canonical basis of the lattice the rows span.
    """
    a = [list(r) for r in rows]
    k = 0
    for c in range(ncols):
        if k == len(a):
            break
        while True:
            nz = [i for i in range(k, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[k], a[p] = a[p], a[k]
            changed = False
            for i in range(k + 1, len(a)):
                if a[i][c] != 0:
                    q = a[i][c] // a[k][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                    changed = changed or a[i][c] != 0
            if not changed:
                break
        if k < len(a) and a[k][c] != 0:
            if a[k][c] < 0:
                a[k] = [-x for x in a[k]]
            for i in range(k):
                q = a[i][c] // a[k][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[k])]
            k += 1
    return tuple(tuple(r) for r in a[:k])
