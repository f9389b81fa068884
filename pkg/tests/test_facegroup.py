import random

import pytest
from hypothesis import given, settings, strategies as st

from omegaloop import facegroup as fg
from omegaloop.complex import CORPUS, bundled
from omegaloop.loopspace import constant, is_omega_edge_path, omega_is_simplex
from omegaloop.paths import contiguous_neighbors

DEG1 = [(0, 0, 0, 0), (0, 1, 1, 0), (0, 2, 3, 0), (0, 0, 0, 0)]


@pytest.fixture(scope="module")
def deg1(hollow):
    return fg.validate_face_sphere(hollow, DEG1)


def test_validate(hollow, c4, deg1):
    assert fg.constant_sphere(c4, 3, 2).dims == (3, 2)
    assert deg1.dims == (3, 3)
    with pytest.raises(fg.FaceSphereError) as e:
        fg.validate_face_sphere(c4, [(0, 0, 0), (0, 2, 0), (0, 0, 0)])
    assert e.value.witness is not None
    with pytest.raises(fg.FaceSphereError):
        fg.validate_face_sphere(hollow, [(0, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_labels(hollow, deg1):
    g = fg.face_sphere_from_labels(hollow, [["x0"] * 4, ["x0", "v1", "v1", "x0"],
                                            ["x0", "v2", "v3", "x0"], ["x0"] * 4])
    assert g == deg1
    assert fg.face_sphere_from_labels(hollow, deg1.to_labels()) == deg1


def test_product_and_repeat(hollow, deg1):
    c = fg.constant_sphere(hollow, 2, 1)
    p = fg.fs_product(c, fg.constant_sphere(hollow, 1, 3))
    assert p.dims == (4, 5) and p == fg.constant_sphere(hollow, 4, 5)
    assert fg.fs_product(deg1, c).dims == (3 + 2 + 1, 3 + 1 + 1)
    assert fg.fs_repeat(deg1) == deg1
    e = fg.fs_trivial_extend(deg1, 1, 2)
    assert e.dims == (4, 5)
    assert all(e(4, j) == 0 for j in range(6)) and all(e(i, 5) == 0 for i in range(5))
    assert fg.fs_contiguous(fg.fs_repeat(deg1, (1,)), fg.fs_repeat(deg1, (2,)))


def test_equivalence(hollow, deg1):
    assert fg.fs_equivalent(deg1, deg1).found
    r = fg.fs_equivalent(deg1, fg.fs_repeat(deg1, (), (1,)), budget=10**4)
    assert r.found
    r = fg.fs_equivalent(deg1, fg.constant_sphere(hollow, 3, 3), budget=2000)
    assert not r.found
    assert any(fg.sphere_degree(deg1)) and not any(fg.sphere_degree(fg.constant_sphere(hollow, 3, 3)))


def test_product_with_constant_is_extension(hollow, deg1):
    c = fg.constant_sphere(hollow, 1, 1)
    r = fg.fs_equivalent(fg.fs_product(deg1, c), fg.fs_trivial_extend(deg1, 2, 2), budget=10**4)
    assert r.found


def test_phi_of_constant(hollow):
    c = fg.constant_sphere(hollow, 2, 3)
    assert fg.fs_to_omega_loop(c) == (constant(hollow, 2),) * 4
    loop = fg.phi(c)
    assert all(set(l) == {0} for l in loop)
    assert is_omega_edge_path(hollow, loop) is None


def test_phi_is_an_edge_loop(hollow, deg1):
    loop = fg.phi(deg1)
    assert loop[0] == loop[-1] == (0,)
    assert is_omega_edge_path(hollow, loop) is None


def test_degree_is_additive(hollow, deg1):
    d = fg.sphere_degree(deg1)
    dd = fg.sphere_degree(fg.fs_product(deg1, deg1))
    assert dd == tuple(2 * x for x in d)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_round_trip_and_transpose(name, m, n, seed):
    X = bundled(name)
    f = fg.random_face_sphere(X, m, n, random.Random(seed))
    assert fg.omega_loop_to_fs(X, fg.fs_to_omega_loop(f)) == f
    assert fg.transpose(fg.transpose(f)) == f
    assert fg.sphere_degree(f) == fg.sphere_degree(fg.fs_trivial_extend(f, 1, 1))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["k4hollow", "torus7", "rp2"]), st.integers(1, 3), st.integers(1, 3),
       st.integers(0, 10**6))
def test_contiguity_transfer(name, m, n, seed):
    X = bundled(name)
    rng = random.Random(seed)
    f = fg.random_face_sphere(X, m, n, rng)
    g = fg.FaceSphere(X, rng.choice(list(contiguous_neighbors(fg._Stratum(X), f.rows))))
    assert fg.fs_contiguous(f, g)
    # contiguous spheres <-> contiguous ΩX loops, column by column
    a, b = fg.fs_to_omega_loop(f), fg.fs_to_omega_loop(g)
    assert all(omega_is_simplex(X, [a[j], a[j + 1], b[j], b[j + 1]]) for j in range(len(a) - 1))
    assert fg.phi_contiguous(f, g)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
       st.integers(1, 3), st.integers(0, 10**6))
def test_phi_product_certificate(name, m, n, r, s, seed):
    X = bundled(name)
    rng = random.Random(seed)
    f, g = fg.random_face_sphere(X, m, n, rng), fg.random_face_sphere(X, r, s, rng)
    cert = fg.phi_product_certificate(f, g)
    assert tuple(cert.start) == fg.phi(fg.fs_product(f, g))
    assert tuple(cert.end(X)) == fg.omega_product(fg.phi(f), fg.phi(g))
    ext = fg.phi_extension_certificate(f, r - 1, s - 1)
    assert tuple(ext.end(X)) == fg.phi(f)
