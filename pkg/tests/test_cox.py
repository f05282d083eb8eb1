import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainfold import _linalg as la
from chainfold.cox import (
    StratumNotAllowed,
    all_stabilizers_finite,
    cox_sequence,
    equivariant_quotient_dims,
    git_flags,
    irrelevant_collections,
    maximal_allowed_sets,
    stratum_stabilizer,
    vanishing_allowed,
)
from chainfold.root_datum import build_root_datum, torus
from chainfold.stacky_fan import single_cone_fan, stacky_fan, validate, zero_fan

from fans import SQUARE, random_complete_fan_2d, random_single_cone_3d
from oracles import integer_rank, invariant_factors, in_integer_span, kernel_vectors_in_box

P2 = [(1, 0), (0, 1), (-1, -1)]


def p2_fan():
    return stacky_fan(torus(2), P2, [(0, 1), (1, 2), (0, 2)])


def p1xp1_fan():
    return stacky_fan(torus(2), [(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def test_projective_plane():
    cox = cox_sequence(p2_fan())
    assert (cox.free_rank, cox.invariant_factors, cox.kernel_basis, cox.exact_at_T) == (1, (), ((1, 1, 1),), True)


def test_weighted_plane():
    cox = cox_sequence([(1, 0), (0, 1), (-1, -2)])
    assert cox.free_rank == 1 and cox.kernel_basis == ((1, 2, 1),)


def test_single_nonprimitive_ray():
    cox = cox_sequence([(2,)])
    assert (cox.free_rank, cox.invariant_factors, cox.exact_at_T) == (0, (2,), True)
    fan = stacky_fan(torus(1), [(2,)], [(0,)])
    assert stratum_stabilizer(cox, fan, [0]) == (0, (2,))
    assert stratum_stabilizer(cox, fan, []) == (0, ())


def test_raw_input_errors():
    with pytest.raises(ValueError):
        cox_sequence([(1, 0), (0, 0)])
    with pytest.raises(ValueError):
        cox_sequence([])
    assert cox_sequence([], rank=3).free_rank == 0


def test_vanishing_sets():
    fan = p2_fan()
    assert vanishing_allowed(fan, [])
    assert vanishing_allowed(fan, [0, 1])
    assert not vanishing_allowed(fan, [0, 1, 2])
    with pytest.raises(IndexError):
        vanishing_allowed(fan, [5])


def test_irrelevant_collections():
    t = torus(3)
    assert irrelevant_collections(single_cone_fan(t, [(1, 0, 0), (0, 1, 0)])) == ()
    assert irrelevant_collections(p2_fan()) == ((0, 1, 2),)
    assert irrelevant_collections(p1xp1_fan()) == ((0, 2), (1, 3))


def test_square_cone_stabilizer():
    fan = single_cone_fan(torus(3), SQUARE)
    cox = cox_sequence(fan)
    fr, _ = stratum_stabilizer(cox, fan, range(4))
    assert fr == 1
    with pytest.raises(StratumNotAllowed):
        stratum_stabilizer(cox_sequence(p2_fan()), p2_fan(), [0, 1, 2])


def test_quotient_dims():
    assert equivariant_quotient_dims(cox_sequence(p2_fan())).quotient_dim == 2
    assert equivariant_quotient_dims(cox_sequence([], rank=3)).quotient_dim == 3
    one = equivariant_quotient_dims(cox_sequence([(1, 0)]))
    assert one.quotient_dim == 2 and not one.classical_applies


def test_git_flags(two_cone_fan):
    assert git_flags(two_cone_fan) == git_flags(p1xp1_fan())
    flags = git_flags(two_cone_fan)
    assert flags.applicable and flags.semistable_equals_stable
    sq = git_flags(single_cone_fan(torus(3), SQUARE))
    assert sq.applicable and not sq.semistable_equals_stable
    z = git_flags(zero_fan(build_root_datum("A", 1, "adjoint")))
    assert z.applicable and z.semistable_equals_stable


def test_maximal_allowed_sets_match_cones():
    fan = p1xp1_fan()
    assert len(maximal_allowed_sets(fan)) == len(fan.maximal_cones)


ray_lists = st.integers(1, 3).flatmap(
    lambda r: st.lists(
        st.lists(st.integers(-4, 4), min_size=r, max_size=r).filter(any), min_size=1, max_size=4
    )
)


@settings(max_examples=150, deadline=None)
@given(ray_lists)
def test_cox_against_oracle(rays):
    r = len(rays[0])
    cox = cox_sequence(rays)
    assert cox.free_rank + integer_rank(rays, r) == len(rays)
    assert list(cox.invariant_factors) == [d for d in invariant_factors(rays, r) if d > 1]
    assert cox.exact_at_T == (la.rank(rays, r) == r)
    if len(rays) <= 3:
        for m in kernel_vectors_in_box(rays, 2):
            assert in_integer_span(cox.kernel_basis, m)


def test_stabilizers_monotone():
    rng = random.Random(11)
    for _ in range(10):
        fan = random_single_cone_3d(rng)
        assert validate(fan).valid
        cox = cox_sequence(fan)
        for small in fan.cones:
            for big in fan.cones:
                if set(small) <= set(big):
                    a, b = stratum_stabilizer(cox, fan, small), stratum_stabilizer(cox, fan, big)
                    order_a = 1
                    for d in a[1]:
                        order_a *= d
                    assert a[0] <= b[0]
                    if a[0] == b[0] == 0:
                        order_b = 1
                        for d in b[1]:
                            order_b *= d
                        assert order_b % order_a == 0


def test_finite_stabilizers_on_complete_fans():
    rng = random.Random(5)
    for _ in range(10):
        fan = random_complete_fan_2d(rng, 6)
        assert validate(fan).valid
        assert all_stabilizers_finite(cox_sequence(fan), fan)
