import random

import pytest
from hypothesis import given, settings, strategies as st

from omegaloop.complex import (CORPUS, ComplexError, SimplicialComplex, SimplicialMap, bundled,
                               check_simplicial, load_complex, random_based_map, simplicial_witness)


def test_hollow_from_text():
    X = load_complex("x0 v1 v2\nx0 v1 v3\nx0 v2 v3\nv1 v2 v3\n")
    assert X.n_vertices == 4 and len(X.facets) == 4
    assert X.is_simplex([X.vid("x0"), X.vid("v1"), X.vid("v2")])
    assert not X.is_simplex(range(4))
    assert X == bundled("k4hollow")


def test_point_and_c4():
    P = load_complex("x0\n")
    assert P.n_vertices == 1 and P.is_simplex([0])
    C4 = load_complex("x0 v1\nv1 v2\nv2 v3\nv3 x0\n")
    assert len(C4.simplices(1)) == 4 and C4.simplices(2) == []
    assert not C4.is_simplex([C4.vid("v1"), C4.vid("v3")])


def test_subfacets_are_absorbed():
    X = load_complex("x0 v1 v2\nx0 v1\n")
    assert len(X.facets) == 1


@pytest.mark.parametrize("bad", ["", "# only a comment\n", "basepoint q\nx0 v1\n"])
def test_bad_input(bad):
    with pytest.raises(ComplexError):
        load_complex(bad)


def labelled(X):
    return X.label(X.basepoint), {frozenset(X.label(v) for v in f) for f in X.facets}


def test_json_round_trip(corpus):
    for X in corpus.values():
        assert SimplicialComplex.from_json(X.to_json()) == X
        Y = load_complex(X.to_text())
        # the text format renumbers vertices by first appearance
        assert labelled(Y) == labelled(X)


def test_simplicial_maps(c4):
    assert check_simplicial(SimplicialMap.identity(c4))
    # v1 -> v3 with the rest fixed still sends every edge to an edge
    f = SimplicialMap.from_labels(c4, c4, {"v1": "v3"})
    assert check_simplicial(f)
    P = bundled("point")
    assert check_simplicial(SimplicialMap.constant(c4, P))
    g = SimplicialMap.from_labels(c4, c4, {"v1": "v2", "v2": "x0"})
    assert simplicial_witness(g) is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_random_maps_are_based_and_simplicial(a, b, seed):
    X, Y = bundled(a), bundled(b)
    f = random_based_map(X, Y, random.Random(seed))
    assert f.is_based and check_simplicial(f)
