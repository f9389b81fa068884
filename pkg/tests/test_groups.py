import random

from hypothesis import given, settings, strategies as st

from omegaloop.complex import CORPUS, SimplicialMap, bundled
from omegaloop.groups import (EdgeGroup, Presentation, abelian_order, abelianization,
                              change_of_basepoint, cyclic_reduce, edge_group_presentation,
                              exponent_sums, free_reduce, induced_hom, inverse,
                              tietze_simplify, tietze_simplify_tracked)
from omegaloop.paths import concatenate, random_loop, reverse
from omegaloop.stone import simplicial_homology

words = st.lists(st.integers(1, 3).flatmap(lambda g: st.sampled_from([g, -g])), max_size=12)


def test_word_helpers():
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)
    assert cyclic_reduce([-1, 2, 1]) == (2,)
    assert inverse([1, -2]) == (2, -1)
    assert exponent_sums([1, 1, -2], 2) == {0: 2, 1: -1}


@given(words)
def test_free_reduce_properties(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert free_reduce(list(w) + list(inverse(w))) == ()
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))


def test_small_presentations():
    assert tietze_simplify(Presentation(("a", "b"), ((2,),))) == Presentation(("a",), ())
    P = edge_group_presentation(bundled("c4"))
    T = tietze_simplify(P)
    assert len(T.generators) == 1 and T.relators == ()
    for name in ("k4hollow", "delta3", "point"):
        assert tietze_simplify(edge_group_presentation(bundled(name))).generators == ()


def test_torus_and_rp2():
    T = tietze_simplify(edge_group_presentation(bundled("torus7")))
    assert len(T.generators) == 2 and len(T.relators) == 1
    ab = abelianization(T)
    assert (ab.rank, ab.torsion) == (2, ())
    ab = abelianization(edge_group_presentation(bundled("rp2")))
    assert (ab.rank, list(ab.torsion)) == (0, [2])
    assert abelianization(edge_group_presentation(bundled("c4"))).rank == 1


def test_loop_words(c4):
    G = EdgeGroup.of_complex(c4)
    assert G.loop_to_word((0, 0, 0)) == ()
    w = G.loop_to_word((0, 1, 2, 3, 0))
    assert len(w) == 1
    l = (0, 1, 2, 3, 0)
    assert free_reduce(G.loop_to_word(concatenate(l, reverse(l)))) == ()
    assert abelian_order(G.presentation, w) == 0


def test_basepoint_change(c4):
    G0 = EdgeGroup.of_complex(c4)
    G1 = EdgeGroup.of_complex(c4.with_basepoint(1))
    assert change_of_basepoint(G0, G0, (0,)).relators_hold_abelian()
    h = change_of_basepoint(G0, G1, (0, 1))
    w = G0.loop_to_word((0, 1, 2, 3, 0))
    img = h(w)
    # the winding class is preserved up to conjugacy
    assert cyclic_reduce(img) == cyclic_reduce(G1.loop_to_word((1, 2, 3, 0, 1)))
    H = EdgeGroup.of_complex(bundled("k4hollow"))
    Hb = EdgeGroup.of_complex(bundled("k4hollow").with_basepoint(2))
    hh = change_of_basepoint(H, Hb, (0, 2))
    assert all(abelian_order(Hb.presentation, hh(H.loop_to_word(l))) == 1
               for l in [(0, 1, 2, 0), (0, 1, 2, 3, 0)])


def test_induced_homs(c4):
    G = EdgeGroup.of_complex(c4)
    w = G.loop_to_word((0, 1, 2, 3, 0))
    ident = induced_hom(SimplicialMap.identity(c4), G, G)
    assert ident(w) == w
    P = bundled("point")
    GP = EdgeGroup.of_complex(P)
    assert induced_hom(SimplicialMap.constant(c4, P), G, GP)(w) == ()
    rot = SimplicialMap(c4, c4, (1, 2, 3, 0))
    h = induced_hom(rot, G, G, allow_unbased=True)
    assert cyclic_reduce(h(w)) == cyclic_reduce(w)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(1, 6), st.integers(0, 10**6))
def test_tietze_rewrite_preserves_abelian_order(name, m, seed):
    X = bundled(name)
    G = EdgeGroup.of_complex(X)
    T = tietze_simplify_tracked(G.presentation)
    w = G.loop_to_word(random_loop(X, m, random.Random(seed)))
    assert abelian_order(G.presentation, w) == abelian_order(T.presentation, T.rewrite(w))


def test_h1_matches_abelianization(corpus):
    for X in corpus.values():
        h = simplicial_homology(X, 1)
        ab = abelianization(edge_group_presentation(X))
        assert h.betti[1] == ab.rank and h.torsion[1] == list(ab.torsion)


def test_presentation_json():
    P = edge_group_presentation(bundled("rp2"))
    assert Presentation.from_json(P.to_json()) == P
