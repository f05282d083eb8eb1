import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chainfold import _linalg as la
from chainfold.normal_form import hermite_rows, integer_kernel, smith_normal_form

from oracles import integer_rank, invariant_factors, in_integer_span, kernel_vectors_in_box


def matmul(a, b):
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a)


def _det(m):
    return int(sympy.Matrix(m).det())


matrices = st.integers(1, 4).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-6, 6), min_size=cols, max_size=cols), min_size=1, max_size=4)
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_form_against_minors(m):
    n = len(m[0])
    snf = smith_normal_form(m, n)
    assert matmul(matmul(snf.left, m), snf.right) == snf.diagonal
    assert abs(_det(snf.left)) == 1 and abs(_det(snf.right)) == 1
    assert list(snf.invariant_factors) == invariant_factors(m, n)
    assert snf.rank == integer_rank(m, n)
    d = snf.invariant_factors
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=4))
def test_kernel_against_box_enumeration(rows):
    n = len(rows)
    basis = integer_kernel(la.transpose(rows), n)
    assert len(basis) == n - integer_rank(rows, 2)
    for v in basis:
        assert all(sum(v[i] * rows[i][j] for i in range(n)) == 0 for j in range(2))
    for m in kernel_vectors_in_box(rows, 2):
        assert in_integer_span(basis, m)


def test_known_kernels():
    assert integer_kernel(la.transpose([(1, 0), (0, 1), (-1, -1)]), 3) == ((1, 1, 1),)
    assert integer_kernel(la.transpose([(1, 0), (0, 1), (-1, -2)]), 3) == ((1, 2, 1),)
    assert smith_normal_form([(2,)]).invariant_factors == (2,)


def test_hermite_is_canonical():
    a = hermite_rows([(2, 4, 0), (0, 3, 3)], 3)
    b = hermite_rows([(2, 7, 3), (0, -3, -3)], 3)  # same lattice, other basis
    assert a == b


def test_empty_and_zero_matrices():
    assert smith_normal_form([], 3).rank == 0
    assert smith_normal_form([(0, 0)], 2).invariant_factors == ()
    with pytest.raises(Exception):
        smith_normal_form([(1, "x")], 2)
