import random

import pytest
from hypothesis import given, settings, strategies as st

from omegaloop.complex import CORPUS, bundled
from omegaloop.paths import (PathError, SearchStatus, alpha_chain, check_chain, concatenate,
                             contiguity_search, contiguous_neighbors, contiguous_paths,
                             extend, extension_contiguity_search, random_loop, reverse,
                             reverse_inverse_chain, same_size, trivial_extend, validate_loop)

X0, V1, V2, V3 = 0, 1, 2, 3


def test_validate(hollow, c4):
    assert validate_loop(hollow, (X0, V1, V2, X0)) == (0, 1, 2, 0)
    assert validate_loop(c4, (X0,)) == (0,)
    with pytest.raises(PathError) as e:
        validate_loop(c4, (X0, V2, X0))
    assert e.value.position == 0
    with pytest.raises(PathError):
        validate_loop(hollow, (X0, V1, V2))


def test_contiguity_examples(hollow, c4):
    assert contiguous_paths(hollow, (0, 1, 2, 0), (0, 1, 1, 0))
    assert contiguous_paths(c4, (0, 1, 2, 3, 0), (0, 1, 2, 3, 0))
    assert not contiguous_paths(c4, (0, 1, 2, 3, 0), (0,) * 5)


def test_extensions():
    assert extend((0, 1, 0), (1,)) == (0, 1, 1, 0)
    assert trivial_extend((0,), 2) == (0, 0, 0)
    # α_I = α_0 ∘ α_3: α_3 acts first and repeats the final x0
    assert extend((0, 1, 2, 0), (0, 3)) == (0, 0, 1, 2, 0, 0)
    assert same_size((0, 1, 0), 4) == (0, 1, 0, 0, 0)
    with pytest.raises(PathError):
        extend((0, 1, 0), (3,))


def test_concatenate_and_reverse():
    assert concatenate((0,), (0,)) == (0, 0)
    c = concatenate((0, 1, 0), (0, 3, 0))
    assert c == (0, 1, 0, 0, 3, 0) and len(c) - 1 == 5
    assert reverse((0, 1, 2, 0)) == (0, 2, 1, 0)


def test_reverse_inverse_examples(hollow, c4):
    assert reverse_inverse_chain((0, 0)) == [(0, 0, 0, 0)] * 2
    ch = reverse_inverse_chain((0, 1, 2, 0))
    assert all(len(l) == 8 for l in ch) and check_chain(hollow, ch) is None
    l = (0, 1, 2, 3, 0)
    ch = reverse_inverse_chain(l)
    assert len(ch) == 5 and ch[0] == (0,) * 10 and ch[-1] == concatenate(reverse(l), l)
    assert check_chain(c4, ch) is None


def test_search_examples(hollow, c4):
    l = (0, 1, 2, 0)
    r = contiguity_search(hollow, l, l)
    assert r.found and r.steps == 0
    r = contiguity_search(hollow, l, (0, 3, 3, 0), 10**4)
    assert r.found and check_chain(hollow, r.chain) is None
    assert r.chain[0] == l and r.chain[-1] == (0, 3, 3, 0)
    r = contiguity_search(c4, (0, 1, 2, 3, 0), (0,) * 5, 10**6)
    assert r.status == SearchStatus.EXHAUSTED and not r.found


def test_extension_search(c4):
    l = (0, 1, 0)
    r = extension_contiguity_search(c4, l, trivial_extend(l, 2), 4)
    assert r.found
    r = extension_contiguity_search(c4, (0, 1, 2, 3, 0), (0,) * 5, 8, budget=5000)
    assert not r.found


def test_budget_is_reported(hollow):
    r = contiguity_search(hollow, (0, 1, 2, 3, 1, 0), (0, 3, 2, 1, 3, 0), budget=3)
    assert r.status in (SearchStatus.BUDGET, SearchStatus.FOUND)
    assert r.explored <= 3


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(1, 6), st.integers(0, 10**6))
def test_reverse_inverse_property(name, m, seed):
    X = bundled(name)
    l = random_loop(X, m, random.Random(seed))
    ch = reverse_inverse_chain(l)
    assert check_chain(X, ch) is None
    assert ch[-1] == concatenate(reverse(l), l)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(1, 5), st.integers(0, 10**6), st.data())
def test_alpha_chain_property(name, m, seed, data):
    X = bundled(name)
    l = random_loop(X, m, random.Random(seed))
    i = data.draw(st.integers(0, m))
    j = data.draw(st.integers(0, m))
    assert check_chain(X, alpha_chain(l, i, j)) is None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(1, 4), st.integers(0, 10**6))
def test_neighbors_are_contiguous_and_symmetric(name, m, seed):
    X = bundled(name)
    l = random_loop(X, m, random.Random(seed))
    nbs = list(contiguous_neighbors(X, l))
    assert l in nbs and nbs == sorted(nbs)
    for nb in nbs:
        assert contiguous_paths(X, l, nb)
        assert l in contiguous_neighbors(X, nb)
