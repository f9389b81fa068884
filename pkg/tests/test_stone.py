import itertools

import pytest
from hypothesis import given, settings, strategies as st
import sympy

from omegaloop.complex import bundled
from omegaloop.loopspace import build_skeleton
from omegaloop.smith import invariant_factors, smith_normal_form
from omegaloop.stone import (HomologyError, cell_boundary, chain_complex_of_N, compare_components,
                             enumerate_chains, reduce_boundary, simplicial_homology,
                             stone_vertex_image)

matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def sympy_factors(A):
    from sympy.matrices.normalforms import smith_normal_form as snf
    D = snf(sympy.Matrix(A), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_against_sympy(A):
    assert sorted(invariant_factors(A)) == sympy_factors(A)
    cols = [{r: A[r][c] for r in range(len(A)) if A[r][c]} for c in range(len(A[0]))]
    assert sorted(reduce_boundary(cols)) == sympy_factors(A)


def test_snf_transforms():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    S = smith_normal_form(A)
    assert S.diagonal == [2, 6, 12]


def test_homology_of_corpus():
    assert simplicial_homology(bundled("k4hollow"), 2).betti == [1, 0, 1]
    assert simplicial_homology(bundled("c4"), 1).betti == [1, 1]
    h = simplicial_homology(bundled("rp2"), 2)
    assert h.betti == [1, 0, 0] and h.torsion[1] == [2]
    assert simplicial_homology(bundled("torus7"), 2).betti == [1, 2, 1]


def test_needs_skeleton_dimension():
    with pytest.raises(HomologyError):
        simplicial_homology(build_skeleton(bundled("c4"), 2, 2), 2)


def test_chains_examples():
    X = bundled("c4")
    assert enumerate_chains(X, 1) == [()]
    assert chain_complex_of_N(X, 1).homology(1).betti == [1, 0]
    H = bundled("k4hollow")
    ch = enumerate_chains(H, 2)
    expect = [s for d in range(3) for s in H.simplices(d) if H.is_simplex(set(s) | {0})]
    assert sorted(c[0] for c in ch) == sorted(expect)


def test_c4_chains_brute_force():
    X = bundled("c4")
    simp = [s for d in range(2) for s in X.simplices(d)]
    ok = lambda a, b: X.is_simplex(set(a) | set(b))
    brute = [c for c in itertools.product(simp, repeat=3)
             if ok((0,), c[0]) and ok(c[0], c[1]) and ok(c[1], c[2]) and ok(c[2], (0,))]
    assert sorted(enumerate_chains(X, 4)) == sorted(brute)
    assert chain_complex_of_N(X, 4).homology(1).betti[0] == 3


def test_d_squared_and_signs():
    c = ((0, 1), (1, 2))
    bd = cell_boundary(c)
    assert bd == {((1,), (1, 2)): 1, ((0,), (1, 2)): -1, ((0, 1), (2,)): -1, ((0, 1), (1,)): 1}
    for name in ("c3", "k4hollow"):
        assert chain_complex_of_N(bundled(name), 3, 3).check_d_squared()


def test_vertex_image():
    X = bundled("c4")
    assert stone_vertex_image(X, (0,), 3) == ((0,), (0,))
    assert stone_vertex_image(X, (0, 1, 2, 3, 0), 4) == ((1,), (2,), (3,))


@pytest.mark.parametrize("name,ks", [("c4", range(4, 9)), ("k4hollow", range(1, 4))])
def test_component_bijection(name, ks):
    X = bundled(name)
    for k in ks:
        cc = compare_components(build_skeleton(X, k, 1), chain_complex_of_N(X, k, 1, check=False))
        assert cc.bijective and cc.omega_components == cc.stone_components


def test_hollow_betti_k3():
    X = bundled("k4hollow")
    hN = chain_complex_of_N(X, 3).homology(2)
    hS = simplicial_homology(build_skeleton(X, 3, 3), 2)
    assert hN.agrees(hS, 2) and hS.betti == [1, 1, 1]
