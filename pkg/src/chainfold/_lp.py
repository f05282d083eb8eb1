"""A small dense two-phase simplex over Fractions.

Problem sizes here are tiny (tens of variables), so a tableau with Bland's
rule is plenty and never cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple] = None


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    inv = 1 / tab[r][c]
    tab[r] = [a * inv for a in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [a - f * b for a, b in zip(row, tab[r])]
    basis[r] = c


def _run(tab, basis, obj_row: int, allowed: int) -> bool:
    """Maximise the objective stored (negated) in ``tab[obj_row]``.

    Columns >= ``allowed`` never enter.  Returns False if unbounded.
    """
    m = len(basis)
    while True:
        obj = tab[obj_row]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(tab, basis, leave, enter)


def _standard_form(c, a_eq, b_eq) -> LPResult:
    """max c.y  s.t.  a_eq y = b_eq, y >= 0."""
    n = len(c)
    rows = []
    rhs = []
    for row, b in zip(a_eq, b_eq):
        row = [Fraction(v) for v in row]
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    m = len(rows)
    # phase 1: one artificial per row
    tab = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(rows[i] + art + [rhs[i]])
    basis = [n + i for i in range(m)]
    phase1 = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        phase1 = [p - t for p, t in zip(phase1, tab[i])]
    for i in range(m):
        phase1[n + i] = Fraction(0)
    tab.append(phase1)
    _run(tab, basis, m, n + m)
    if tab[m][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis
    keep = []
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if tab[i][j] != 0), None)
            if j is None:
                continue  # redundant equality
            _pivot(tab, basis, i, j)
        keep.append(i)
    tab = [tab[i][:n] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = [-Fraction(v) for v in c] + [Fraction(0)]
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [o - f * t for o, t in zip(obj, tab[i])]
    tab.append(obj)
    if not _run(tab, basis, len(basis), n):
        return LPResult(UNBOUNDED)
    y = [Fraction(0)] * n
    for i, b in enumerate(basis):
        y[b] = tab[i][-1]
    return LPResult(OPTIMAL, tab[-1][-1], tuple(y))


def maximize(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximise c.x subject to a_ub x <= b_ub and a_eq x = b_eq, x free."""
    n = len(c)
    k = len(a_ub)
    big_c = [Fraction(v) for v in c] + [-Fraction(v) for v in c] + [Fraction(0)] * k
    rows = []
    rhs = []
    for i, (row, b) in enumerate(zip(a_ub, b_ub)):
        slack = [Fraction(0)] * k
        slack[i] = Fraction(1)
        rows.append([Fraction(v) for v in row] + [-Fraction(v) for v in row] + slack)
        rhs.append(b)
    for row, b in zip(a_eq, b_eq):
        rows.append([Fraction(v) for v in row] + [-Fraction(v) for v in row] + [Fraction(0)] * k)
        rhs.append(b)
    res = _standard_form(big_c, rows, rhs)
    if res.status != OPTIMAL:
        return res
    y = res.x
    x = tuple(y[i] - y[n + i] for i in range(n))
    return LPResult(OPTIMAL, res.value, x)


def feasible_point(
    a_ub: Sequence[Sequence], b_ub: Sequence, n: int, a_eq=(), b_eq=()
) -> Optional[tuple]:
    res = maximize([0] * n, a_ub, b_ub, a_eq, b_eq)
    return res.x if res.status == OPTIMAL else None
