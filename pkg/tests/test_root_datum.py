import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainfold import _linalg as la
from chainfold.root_datum import (
    RootDatumError,
    WeylGroupTooLarge,
    build_root_datum,
    cartan_matrix,
    explicit_root_datum,
    fundamental_coweights,
    is_dominant,
    longest_element,
    positive_roots,
    simple_reflection,
    stabilizer,
    to_dominant,
    torus,
    weyl_group,
    weyl_orbit,
)

from oracles import weyl_closure

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]
ISOGENIES = ["simply_connected", "adjoint"]


def test_a1_conventions():
    sc = build_root_datum("A", 1, "simply_connected")
    assert (sc.rank, sc.simple_coroots, sc.simple_roots) == (1, ((1,),), ((2,),))
    ad = build_root_datum("A", 1, "adjoint")
    assert (ad.simple_coroots, ad.simple_roots) == (((2,),), ((1,),))


def test_torus_has_no_roots():
    t = build_root_datum("torus", extra_central_rank=3)
    assert (t.rank, t.semisimple_rank, t.simple_roots) == (3, 0, ())
    assert [w.word for w in weyl_group(t)] == [()]
    assert longest_element(t).is_identity()


def test_general_linear():
    gl3 = build_root_datum("A", 2, "general_linear")
    assert (gl3.rank, gl3.semisimple_rank, gl3.central_rank) == (3, 2, 1)
    assert len(weyl_group(gl3)) == 6


@pytest.mark.parametrize("series,n", TYPES)
@pytest.mark.parametrize("iso", ISOGENIES)
def test_cartan_matrix_matches_type(series, n, iso):
    rd = build_root_datum(series, n, iso)
    assert rd.cartan_matrix == cartan_matrix(series, n)


@pytest.mark.parametrize("bad", [("E", 6), ("A", 0), ("B", 1), ("D", 3), ("G", 3)])
def test_bad_labels(bad):
    with pytest.raises(RootDatumError):
        build_root_datum(*bad)


def test_bad_isogeny():
    with pytest.raises(RootDatumError):
        build_root_datum("A", 2, "spin")


def test_explicit_rejects_non_cartan():
    with pytest.raises(RootDatumError):
        explicit_root_datum(2, [(1, 0), (0, 1)], [(2, 0), (0, -2)])
    with pytest.raises(RootDatumError):
        # affine A1 Cartan matrix is not of finite type
        explicit_root_datum(2, [(2, -2), (-2, 2)], [(1, 0), (0, 1)])


def test_dominance_examples(a2):
    a1 = build_root_datum("A", 1, "adjoint")
    assert is_dominant(a1, (0,))
    assert not is_dominant(a1, (-1,))
    assert is_dominant(a2, (1, 1))
    with pytest.raises(ValueError):
        is_dominant(a2, (1,))


def test_reflection_examples(a2):
    sc = build_root_datum("A", 1, "simply_connected")
    assert simple_reflection(sc, 1, (3,)) == (-3,)
    assert simple_reflection(a2, 1, (1, 0)) == (-1, 1)
    assert simple_reflection(a2, 2, (0, 0)) == (0, 0)
    with pytest.raises(IndexError):
        simple_reflection(a2, 3, (0, 0))


@pytest.mark.parametrize(
    "series,n,order", [("A", 1, 2), ("A", 2, 6), ("A", 3, 24), ("B", 2, 8), ("C", 3, 48), ("G", 2, 12), ("D", 4, 192)]
)
def test_weyl_order_against_closure(series, n, order):
    rd = build_root_datum(series, n, "adjoint")
    group = weyl_group(rd)
    assert len(group) == order
    assert group[0].is_identity()
    gens = [rd.generator_matrix(i) for i in range(1, rd.semisimple_rank + 1)]
    assert {w.matrix for w in group} == weyl_closure(gens)


def test_weyl_words_multiply_to_matrix():
    rd = build_root_datum("B", 3, "simply_connected")
    for w in weyl_group(rd):
        m = la.identity(3)
        for i in w.word:
            m = la.mat_mul(m, rd.generator_matrix(i))
        assert m == w.matrix


def test_weyl_cap():
    with pytest.raises(WeylGroupTooLarge):
        weyl_group(build_root_datum("D", 4, "adjoint", weyl_cap=100))


def test_to_dominant_examples(a2):
    sc = build_root_datum("A", 1, "simply_connected")
    lam, w = to_dominant(sc, (-3,))
    assert lam == (3,) and w.word == (1,)
    lam, w = to_dominant(a2, (-1, 1))
    assert lam == (1, 0) and w.word == (1,)
    lam, w = to_dominant(a2, (2, 5))
    assert lam == (2, 5) and w.is_identity()


def test_longest_element_examples(a2):
    assert longest_element(build_root_datum("A", 1, "adjoint")).word == (1,)
    w0 = longest_element(a2)
    assert len(w0) == 3 and w0.word == (1, 2, 1)
    # -w0 swaps the two fundamental coweights
    assert tuple(la.neg(w0.act((1, 0)))) == (0, 1)


def test_orbit_examples(a2):
    sc = build_root_datum("A", 1, "simply_connected")
    assert weyl_orbit(a2, (0, 0)) == {(0, 0)}
    assert weyl_orbit(sc, (2,)) == {(2,), (-2,)}
    assert len(weyl_orbit(a2, (1, 1))) == 6


@pytest.mark.parametrize("series,n", TYPES)
def test_positive_root_count(series, n):
    expected = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("B", 2): 4, ("B", 3): 9, ("C", 3): 9, ("D", 4): 12, ("G", 2): 6}
    assert len(positive_roots(build_root_datum(series, n, "simply_connected"))) == expected[(series, n)]


def test_fundamental_coweights_dual_to_roots():
    for series, n in TYPES:
        rd = build_root_datum(series, n, "simply_connected")
        for j, om in enumerate(fundamental_coweights(rd)):
            assert [la.dot(a, om) for a in rd.simple_roots] == [int(i == j) for i in range(n)]


SMALL = [build_root_datum(s, n, iso) for s, n in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3)] for iso in ISOGENIES]
SMALL.append(build_root_datum("A", 1, "adjoint", extra_central_rank=1))
SMALL.append(torus(2))


@st.composite
def datum_and_vector(draw):
    rd = draw(st.sampled_from(SMALL))
    v = tuple(draw(st.lists(st.integers(-6, 6), min_size=rd.rank, max_size=rd.rank)))
    return rd, v


@settings(max_examples=150, deadline=None)
@given(datum_and_vector(), st.integers(0, 5))
def test_reflection_is_involution(dv, k):
    rd, v = dv
    if rd.semisimple_rank == 0:
        return
    i = k % rd.semisimple_rank + 1
    assert simple_reflection(rd, i, simple_reflection(rd, i, v)) == v


@settings(max_examples=150, deadline=None)
@given(datum_and_vector())
def test_to_dominant_properties(dv):
    rd, v = dv
    lam, w = to_dominant(rd, v)
    assert w.act(v) == lam and is_dominant(rd, lam)
    again, w2 = to_dominant(rd, lam)
    assert again == lam and w2.is_identity()
    dominant_in_orbit = [x for x in weyl_orbit(rd, v) if is_dominant(rd, x)]
    assert dominant_in_orbit == [lam]


@settings(max_examples=100, deadline=None)
@given(datum_and_vector())
def test_orbit_stabilizer(dv):
    rd, v = dv
    assert len(weyl_orbit(rd, v)) * len(stabilizer(rd, v)) == len(weyl_group(rd))


@settings(max_examples=100, deadline=None)
@given(datum_and_vector(), st.data())
def test_pairing_invariance(dv, data):
    rd, lam = dv
    chi = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=rd.rank, max_size=rd.rank)))
    w = data.draw(st.sampled_from(weyl_group(rd)))
    winv = next(u for u in weyl_group(rd) if la.mat_mul(u.matrix, w.matrix) == la.identity(rd.rank))
    assert la.dot(winv.act_on_characters(chi), lam) == la.dot(chi, w.act(lam))


@pytest.mark.parametrize("rd", SMALL, ids=lambda rd: rd.label)
def test_longest_element_properties(rd):
    w0 = longest_element(rd)
    assert la.mat_mul(w0.matrix, w0.matrix) == la.identity(rd.rank)
    assert len(w0) == max(len(w) for w in weyl_group(rd))
    for om in fundamental_coweights(rd):
        img = w0.act(om)
        assert all(la.dot(a, img) <= 0 for a in rd.simple_roots)
