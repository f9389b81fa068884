import random

import pytest
from hypothesis import given, settings, strategies as st

from omegaloop.complex import CORPUS, SimplicialMap, bundled, random_based_map
from omegaloop.loopspace import (Move, MoveError, OmegaError, ResourceCapError, apply_move, bar,
                                 build_skeleton, components, constant, enumerate_loops,
                                 is_normal_form, left_translate, normalize_loop_in_omega,
                                 omega_is_simplex, omega_map, omega_simplex_witness,
                                 replay_moves, sigma_union_extension, three_simplex_family,
                                 translation_certificate)
from omegaloop.paths import contiguous_neighbors, random_loop

L1, L2, L3 = (0, 1, 2, 0), (0, 1, 1, 0), (0, 1, 3, 0)


def test_non_flag_witness(hollow):
    assert omega_is_simplex(hollow, [L1, L2])
    assert omega_is_simplex(hollow, [L1, L3]) and omega_is_simplex(hollow, [L2, L3])
    assert omega_simplex_witness(hollow, [L1, L2, L3]) == ("columns", (2, 3))
    assert omega_is_simplex(hollow, [L1])


def test_length_condition(hollow):
    assert omega_is_simplex(hollow, [(0,), (0, 0)])
    assert not omega_is_simplex(hollow, [(0,), (0, 1, 0)])


def brute_force_count(X, k):
    # every vertex sequence, filtered by the loop condition
    import itertools
    n = 0
    for m in range(k + 1):
        for mid in itertools.product(X.vertices, repeat=max(m - 1, 0)):
            l = (0,) + mid + (0,) if m else (0,)
            if all(X.is_simplex({l[i], l[i + 1]}) for i in range(m)):
                n += 1
    return n


def test_vertex_counts(c4, hollow):
    counts = [build_skeleton(c4, k, 1).n_vertices for k in range(5)]
    assert counts == [1, 2, 5, 12, 33]
    assert counts == [brute_force_count(c4, k) for k in range(5)]
    assert build_skeleton(hollow, 3, 2).n_vertices == 22 == 1 + 1 + 4 + 16
    S = build_skeleton(hollow, 0, 3)
    assert S.counts() == {0: 1, 1: 0, 2: 0, 3: 0}


def test_skeleton_dimension_guard(hollow):
    S = build_skeleton(hollow, 2, 1)
    with pytest.raises(OmegaError):
        S.simplices(2)


def test_cap(hollow):
    with pytest.raises(ResourceCapError):
        build_skeleton(hollow, 4, 2, cap=1000)


def test_stored_simplices_are_simplices(hollow):
    S = build_skeleton(hollow, 3, 3)
    for d in (1, 2, 3):
        for s in S.simplices(d):
            assert omega_is_simplex(hollow, [S.loops[v] for v in s])
    # nothing is missing among triangles: brute force over triples of the edge graph
    adj = S.adjacency()
    tri = {s for s in S.simplices(2)}
    for a in range(S.n_vertices):
        for b in adj[a]:
            for c in adj[a] & adj[b]:
                if a < b < c:
                    assert ((a, b, c) in tri) == omega_is_simplex(hollow, [S.loops[v] for v in (a, b, c)])


def test_sigma_union(hollow):
    assert set(sigma_union_extension(hollow, [(0,)])) == {(0,), (0, 0)}
    out = sigma_union_extension(hollow, [L1, L2])
    assert set(out) == {L1, L2, bar(L1), bar(L2)} and len(out) == 4


def test_three_simplex_examples(hollow):
    out = three_simplex_family(hollow, "b", L1, (0, 1, 0))
    assert set(out) == {L1, (0, 1, 0), (0, 1, 0, 0)}
    assert len(three_simplex_family(hollow, "c", L1, L2, 0)) == 4
    # l1 = l1', l2 = l2' collapses to a single loop
    assert three_simplex_family(hollow, "d", L1, L1, L2, L2) == ((0, 1, 2, 0, 0, 1, 1, 0),)
    with pytest.raises(OmegaError):
        three_simplex_family(hollow, "a", L1, (0, 2, 0))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(1, 4), st.integers(0, 10**6))
def test_extension_lemma_property(name, m, seed):
    X = bundled(name)
    rng = random.Random(seed)
    l = random_loop(X, m, rng)
    nbs = list(contiguous_neighbors(X, l))
    lp = rng.choice(nbs)
    assert len(three_simplex_family(X, "a", l, lp)) <= 4
    three_simplex_family(X, "c", l, lp, rng.randrange(m))
    l2 = random_loop(X, rng.randint(1, 3), rng)
    three_simplex_family(X, "d", l, lp, l2, rng.choice(list(contiguous_neighbors(X, l2))))
    down = [nb[:-1] for nb in nbs if nb[m - 1] == 0]
    if m >= 2 and down:
        three_simplex_family(X, "b", l, rng.choice(down))


def test_functor_identity_and_collapse(hollow):
    S = build_skeleton(hollow, 3, 3)
    assert omega_map(SimplicialMap.identity(hollow), S).images == S.loops
    F = omega_map(SimplicialMap.from_labels(hollow, bundled("delta3"), {}), S)
    assert F.simplicial_witness() is None


def test_functor_rejects_unbased(c4):
    S = build_skeleton(c4, 2, 1)
    with pytest.raises(OmegaError):
        omega_map(SimplicialMap(c4, c4, (1, 2, 3, 0)), S)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["c3", "c4", "k4hollow", "torus7"]), st.sampled_from(["c3", "c4", "k4hollow", "delta3"]),
       st.sampled_from(["c4", "k4hollow", "point", "delta3"]), st.integers(0, 10**6))
def test_functor_composition(a, b, c, seed):
    rng = random.Random(seed)
    X, Y, Z = bundled(a), bundled(b), bundled(c)
    f, g = random_based_map(X, Y, rng), random_based_map(Y, Z, rng)
    SX, SY = build_skeleton(X, 3, 2), build_skeleton(Y, 3, 2)
    Of, Og, Ogf = omega_map(f, SX), omega_map(g, SY), omega_map(f.compose(g), SX)
    assert [Og.images[SY.index[l]] for l in Of.images] == Ogf.images


def test_components(c4, hollow):
    assert components(build_skeleton(c4, 4, 1)).count == 3
    assert components(build_skeleton(c4, 7, 1)).count == 3
    assert components(build_skeleton(c4, 8, 1)).count == 5
    assert components(build_skeleton(hollow, 3, 1)).count == 1


def test_translations(c4, hollow):
    S = build_skeleton(c4, 4, 1)
    L = left_translate((0,), S)
    assert L.images[S.index[(0,)]] == (0, 0)
    assert all(img[:2] == (0, 0) for img in L.images)
    # winding w goes to winding w+1
    wind = (0, 1, 2, 3, 0)
    T = build_skeleton(c4, 9, 1)
    cT = components(T)
    cS = components(S)
    Lw = left_translate(wind, S, T)
    ids = Lw.ids_in(T)
    for comp in range(cS.count):
        members = [v for v in range(S.n_vertices) if cS.labels[v] == comp]
        assert len({cT.labels[ids[v]] for v in members}) == 1
    assert cT.labels[ids[S.index[(0,)]]] == cT.labels[T.index[wind]]
    cert = translation_certificate(build_skeleton(hollow, 3, 2), 2, 0)
    assert cert.valid and cert.length == 3


def test_normalize_examples(hollow):
    nf = normalize_loop_in_omega(hollow, [(0,), (0, 0), (0,)])
    assert nf.M == 1 and nf.middle == []
    gamma = [(0,), (0, 0), (0, 1, 0), (0, 1, 2, 0), (0, 3, 2, 0), (0, 3, 0), (0, 0), (0,)]
    nf = normalize_loop_in_omega(hollow, gamma)
    assert nf.M == 3 and nf.middle and all(len(l) == 4 for l in nf.middle)
    assert replay_moves(hollow, gamma, nf.moves) == nf.loop
    assert is_normal_form(hollow, nf.loop) == 3
    again = normalize_loop_in_omega(hollow, nf.loop)
    assert again.loop == nf.loop and again.moves == []
    with pytest.raises(ResourceCapError):
        normalize_loop_in_omega(hollow, gamma, k=2)


def test_illegal_move(hollow):
    with pytest.raises(MoveError):
        apply_move(hollow, [(0,), (0,)], Move("insert", 1, (0, 1, 2, 0)))


def test_component_invariants(c4, hollow):
    from omegaloop.loopspace import component_invariants
    inv = component_invariants(build_skeleton(c4, 5, 2))
    assert len(inv) == 3 and {(d["rank"], tuple(d["torsion"])) for d in inv} == {(0, ())}
    assert component_invariants(build_skeleton(hollow, 3, 2))[0]["rank"] == 1
