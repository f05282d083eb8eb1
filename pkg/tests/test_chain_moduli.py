import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainfold.chain_moduli import (
    CHAMBER,
    NO_COMMON_CONE,
    NOT_RAY_VECTORS,
    ORDER,
    REPEATED_ENTRY,
    ZERO_ENTRY,
    EquivariantChainClass,
    SplittingType,
    canonicalize,
    clutching,
    enumerate_stable,
    is_stable,
    moduli_report,
    same_chamber_witnesses,
    stable_index_sets,
)
from chainfold.root_datum import build_root_datum, weyl_group
from chainfold.stacky_fan import FanError, single_cone_fan, stacky_fan, validate, zero_fan

from conftest import B1, B2, B3
from fans import SQUARE, chamber_fan
from oracles import stable_by_orbits


def s1(rd):
    return next(w for w in weyl_group(rd) if w.word == (1,))


def check(fan, *entries):
    st_ = SplittingType(fan.rd, entries)
    res = is_stable(st_, fan)
    if res.stable:
        assert res.witness.check(st_, fan)
    return res


def test_clutching():
    assert clutching((2, 3), (2, 3)) == (0, 0)
    assert clutching((3,), (1,)) == (2,)
    a2 = build_root_datum("A", 2, "adjoint")
    for w in weyl_group(a2):
        assert clutching(w.act((1, 2)), w.act((0, 1))) == w.act(clutching((1, 2), (0, 1)))


def test_equivariant_chain_class(a2):
    c = EquivariantChainClass(a2, ((0, 0), (1, 1), (0, 0)))
    assert c.clutchings() == ((-1, -1), (1, 1))
    assert c.splitting_type().entries == ((1, 1),)
    with pytest.raises(ValueError):
        EquivariantChainClass(a2, ((0, 0),))
    with pytest.raises(ValueError):
        EquivariantChainClass(a2, ((1, 0), (0, 0))).splitting_type()


def test_canonicalize_examples(a2):
    sc = build_root_datum("A", 1, "simply_connected")
    assert canonicalize(SplittingType(sc, ())).entries == ()
    assert canonicalize(SplittingType(sc, ((2,),))).entries == ((-2,),)
    orbit = {w.act((1, 0)) for w in weyl_group(a2)}
    assert canonicalize(SplittingType(a2, ((-1, 1),))).entries == (min(orbit),)


def test_same_chamber_examples(a2):
    assert len(same_chamber_witnesses(SplittingType(a2, ((0, 0),)))) == 6
    assert [w.word for w in same_chamber_witnesses(SplittingType(a2, ((1, 1),)))] == [()]
    assert same_chamber_witnesses(SplittingType(a2, ((1, 1), (-1, 1)))) == ()


def test_two_cone_stable(two_cone_fan, a2):
    w = s1(a2)
    assert check(two_cone_fan).stable
    assert check(two_cone_fan).witness.cone == 0
    assert check(two_cone_fan, B1).stable
    assert check(two_cone_fan, w.act(B3)).stable
    assert check(two_cone_fan, B2, B3).stable
    for u in weyl_group(a2):
        assert check(two_cone_fan, u.act(B1), u.act(B2)).stable


def test_two_cone_unstable(two_cone_fan, a2):
    assert check(two_cone_fan, B2, B1).reason == ORDER
    assert check(two_cone_fan, B1, B3).reason == NO_COMMON_CONE
    assert check(two_cone_fan, B2, s1(a2).act(B3)).reason == CHAMBER
    assert check(two_cone_fan, B1, B2, B3).reason == NO_COMMON_CONE


def test_degenerate_entries(two_cone_fan):
    assert check(two_cone_fan, (0, 0)).reason == ZERO_ENTRY
    assert check(two_cone_fan, B1, B1).reason == REPEATED_ENTRY
    assert check(two_cone_fan, (2, 1)).reason == NOT_RAY_VECTORS


def test_mismatched_root_data(two_cone_fan):
    b2 = build_root_datum("B", 2, "adjoint")
    with pytest.raises(ValueError):
        is_stable(SplittingType(b2, ((1, 0),)), two_cone_fan)
    with pytest.raises(ValueError):
        SplittingType(b2, ((1, 0, 0),))


def test_census_examples(a2, two_cone_fan):
    assert [s.entries for s in enumerate_stable(zero_fan(a2))] == [()]
    got = [s.entries for s in enumerate_stable(two_cone_fan)]
    assert got == [(), (B1,), (B2,), (B3,), (B1, B2), (B2, B3)]
    t = build_root_datum("torus", extra_central_rank=3)
    square = single_cone_fan(t, SQUARE)
    sets = stable_index_sets(square)
    assert (0, 2) in sets and len(sets) == 16


def test_census_rejects_invalid(a2):
    with pytest.raises(FanError):
        enumerate_stable(stacky_fan(a2, [(-1, 1)], [(0,)]))


def test_reports(a2, two_cone_fan):
    rep = moduli_report(two_cone_fan)
    assert rep.summary.startswith("proper tame")
    assert rep.orbit_poset.size == 6 and len(rep.stable) == 6
    assert all(w.check(s, two_cone_fan) for s, w in zip(rep.stable, rep.witnesses))
    assert moduli_report(zero_fan(a2)).summary == "the group itself"
    a3 = build_root_datum("A", 3, "adjoint")
    sq = moduli_report(single_cone_fan(a3, [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)]))
    assert "Artin stack with a good moduli space" in sq.summary


def test_simplicial_census_equals_cones():
    for r in (1, 2, 3):
        fan = chamber_fan(build_root_datum("A", r, "adjoint"))
        assert len(enumerate_stable(fan)) == len(fan.cones) == 2**r


FANS = {
    "two_cone": stacky_fan(build_root_datum("A", 2, "adjoint"), [B1, B2, B3], [(0, 1), (1, 2)]),
    "stacky_b2": stacky_fan(build_root_datum("B", 2, "simply_connected"), [(4, 2), (3, 2), (1, 1)], [(0, 1), (1, 2)], ordering=[2, 0, 1]),
    "a3_chamber": chamber_fan(build_root_datum("A", 3, "adjoint")),
}


@pytest.mark.parametrize("name", sorted(FANS))
def test_fixture_fans_are_valid(name):
    assert validate(FANS[name]).valid


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(FANS)), st.data())
def test_stability_matches_orbit_oracle(name, data):
    fan = FANS[name]
    n = data.draw(st.integers(0, 3))
    pool = list(fan.ray_vectors) + [(0,) * fan.rd.rank, (1,) * fan.rd.rank]
    group = weyl_group(fan.rd)
    entries = tuple(data.draw(st.sampled_from(group)).act(data.draw(st.sampled_from(pool))) for _ in range(n))
    res = check(fan, *entries)
    expected = stable_by_orbits(entries, [fan.cones[k] for k in range(len(fan.cones))], fan.ray_vectors, fan.ordering, [w.matrix for w in group])
    assert res.stable == expected


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(sorted(FANS)), st.data())
def test_stability_is_weyl_invariant(name, data):
    fan = FANS[name]
    stable = enumerate_stable(fan)
    base = data.draw(st.sampled_from(stable))
    w = data.draw(st.sampled_from(weyl_group(fan.rd)))
    assert is_stable(base.act(w), fan).stable
    perm = data.draw(st.permutations(base.entries))
    moved = SplittingType(fan.rd, tuple(w.act(e) for e in perm))
    assert is_stable(moved, fan).stable == (tuple(perm) == base.entries)


def test_census_ordering_independent():
    rng = random.Random(3)
    for fan in FANS.values():
        ref = stable_index_sets(fan)
        for _ in range(4):
            order = list(range(fan.n_rays))
            rng.shuffle(order)
            assert stable_index_sets(fan.reordered(order)) == ref
