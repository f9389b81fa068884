"""Edge paths and loops, contiguity, extensions and bounded equivalence search.

A path is a plain tuple of vertices. Every routine here only asks its complex
for ``is_simplex(vertex_set)``, so the same code serves a finite complex X and
the (implicit, infinite) loop complex built in ``loopspace``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable, Sequence

from .complex import SimplicialComplex

Loop = tuple


class PathError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class SearchStatus(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"  # whole contiguity class at this length explored, target absent
    BUDGET = "budget"        # gave up; says nothing about equivalence

    def __str__(self):
        return self.value


@dataclass
class SearchResult:
    status: SearchStatus
    chain: list | None = None
    explored: int = 0
    length: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @property
    def steps(self) -> int | None:
        return None if self.chain is None else len(self.chain) - 1


def _quad_test(K):
    """Fast 'is {a, b, c, d} a simplex' for K."""
    if isinstance(K, SimplicialComplex):
        f = K.is_simplex_mask
        return lambda a, b, c, d: f((1 << a) | (1 << b) | (1 << c) | (1 << d))
    return lambda a, b, c, d: K.is_simplex({a, b, c, d})


def basepoint_of(K) -> Hashable:
    return K.basepoint


# -- validation --------------------------------------------------------------

def adjacency_witness(K, seq: Sequence) -> int | None:
    """Index i of the first pair {seq[i], seq[i+1]} that is not a simplex."""
    test = _quad_test(K)
    for i in range(len(seq) - 1):
        a, b = seq[i], seq[i + 1]
        if not test(a, b, a, b):
            return i
    return None


def validate_path(K, seq: Iterable) -> Loop:
    p = tuple(seq)
    if not p:
        raise PathError("empty vertex sequence")
    if isinstance(K, SimplicialComplex):
        for v in p:
            if not (isinstance(v, int) and 0 <= v < K.n_vertices):
                raise PathError(f"{v!r} is not a vertex")
    i = adjacency_witness(K, p)
    if i is not None:
        raise PathError(f"{{{p[i]!r}, {p[i + 1]!r}}} at position {i} is not a simplex", i)
    return p


def validate_loop(K, seq: Iterable, based: bool = True) -> Loop:
    p = validate_path(K, seq)
    x0 = basepoint_of(K)
    if based and (p[0] != x0 or p[-1] != x0):
        raise PathError("loop does not start and end at the basepoint",
                        0 if p[0] != x0 else len(p) - 1)
    if not based and p[0] != p[-1]:
        raise PathError("path is not closed", len(p) - 1)
    return p


def is_loop(K, seq, based: bool = True) -> bool:
    try:
        validate_loop(K, seq, based)
    except PathError:
        return False
    return True


def length(l: Loop) -> int:
    return len(l) - 1


def constant_loop(x0, m: int) -> Loop:
    return (x0,) * (m + 1)


# -- contiguity --------------------------------------------------------------

def contiguity_witness(K, a: Loop, b: Loop) -> int | None:
    """First i with {a_i, a_i+1, b_i, b_i+1} not a simplex, or None."""
    if len(a) != len(b):
        raise PathError(f"length mismatch: {length(a)} vs {length(b)}")
    test = _quad_test(K)
    for i in range(len(a) - 1):
        if not test(a[i], a[i + 1], b[i], b[i + 1]):
            return i
    return None


def contiguous_paths(K, a: Loop, b: Loop) -> bool:
    return contiguity_witness(K, a, b) is None


def check_chain(K, chain: Sequence[Loop]) -> int | None:
    """Index j of the first non-contiguous pair (chain[j], chain[j+1])."""
    for j in range(len(chain) - 1):
        if len(chain[j]) != len(chain[j + 1]) or not contiguous_paths(K, chain[j], chain[j + 1]):
            return j
    return None


# -- extensions and products -------------------------------------------------

def extend_once(l: Loop, i: int) -> Loop:
    """``l ∘ α_i``: repeat the i-th vertex."""
    if not (0 <= i <= len(l) - 1):
        raise PathError(f"extension index {i} out of range for length {length(l)}", i)
    return l[:i + 1] + l[i:]


def extend(l: Loop, indices: Sequence[int]) -> Loop:
    """``l ∘ α_I`` with ``α_I = α_{i1} ∘ ... ∘ α_{ir}``.

    The last index acts first: repeat vertex ``i_r`` of l, then vertex
    ``i_{r-1}`` of the result, and so on. Bounds ``0 <= i_t <= m + t - 1``.
    """
    m = length(l)
    r = len(indices)
    for t, i in enumerate(indices, 1):
        if not (0 <= i <= m + t - 1):
            raise PathError(f"index i_{t}={i} violates 0 <= i_t <= {m + t - 1}", t - 1)
    for i in reversed(indices):
        l = extend_once(l, i)
    assert length(l) == m + r
    return l


def trivial_extend(l: Loop, r: int) -> Loop:
    """Repeat the final vertex r times."""
    if r < 0:
        raise PathError("negative extension")
    return l + (l[-1],) * r


def same_size(l: Loop, m: int) -> Loop:
    if length(l) > m:
        raise PathError(f"cannot same-size a length-{length(l)} loop down to {m}")
    return trivial_extend(l, m - length(l))


def concatenate(a: Loop, b: Loop) -> Loop:
    """Product of based loops; the shared basepoint is doubled (length m+n+1)."""
    if a[-1] != b[0]:
        raise PathError("paths do not meet")
    return tuple(a) + tuple(b)


def reverse(l: Loop) -> Loop:
    return tuple(reversed(l))


def alpha_chain(l: Loop, i: int, j: int) -> list[Loop]:
    """Contiguity chain ``l∘α_i ~ l∘α_{i+1} ~ ... ~ l∘α_j``."""
    step = 1 if j >= i else -1
    return [extend_once(l, t) for t in range(i, j + step, step)]


def reverse_inverse_chain(l: Loop) -> list[Loop]:
    """Explicit contiguity chain from the constant loop to ``reverse(l)·l``.

    Both ends have length 2m+1; the intermediate terms are the palindromes
    ``L^i`` that walk i steps along ``reverse(l)``, pause, and walk back.
    """
    m = length(l)
    if m < 1:
        raise PathError("need a loop of length >= 1")
    w = reverse(l)
    n = 2 * m + 1
    chain = []
    for i in range(m + 1):
        L = []
        for j in range(n + 1):
            if j <= i:
                L.append(w[j])
            elif j >= n - i:
                L.append(w[n - j])
            else:
                L.append(w[i])
        chain.append(tuple(L))
    return chain


# -- search ------------------------------------------------------------------

def _candidates(K, v) -> Sequence:
    if isinstance(K, SimplicialComplex):
        return sorted((v,) + K.neighbors(v))
    return K.candidates(v)


def contiguous_neighbors(K, l: Loop, fixed_ends: bool = True):
    """All loops contiguous to l (same length, same endpoints), lexicographic.

    Depth-first over positions; a partial choice is dropped as soon as the
    quadruple at the previous step fails.
    """
    test = _quad_test(K)
    m = len(l) - 1
    if m == 0:
        yield l
        return
    new = [l[0]] + [None] * m
    last = l[-1]

    def rec(i):
        a, b = l[i - 1], l[i]
        prev = new[i - 1]
        if i == m:
            if test(a, b, prev, last):
                new[m] = last
                yield tuple(new)
            return
        for w in _candidates(K, b):
            if test(a, b, prev, w):
                new[i] = w
                yield from rec(i + 1)

    yield from rec(1)


def contiguity_search(K, a: Loop, b: Loop, budget: int = 10**5) -> SearchResult:
    """Breadth-first search for a contiguity chain a ~ ... ~ b.

    ``budget`` bounds the number of distinct loops dequeued. Neighbors are
    generated in lexicographic order, so the returned chain is reproducible.
    """
    if len(a) != len(b):
        raise PathError(f"length mismatch: {length(a)} vs {length(b)}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    if a == b:
        return SearchResult(SearchStatus.FOUND, [a], 0, length(a))
    ids = {a: 0}
    loops = [a]
    parent = [-1]
    queue = deque([0])
    explored = 0
    while queue:
        if explored >= budget:
            return SearchResult(SearchStatus.BUDGET, None, explored, length(a))
        k = queue.popleft()
        explored += 1
        for nb in contiguous_neighbors(K, loops[k]):
            if nb in ids:
                continue
            ids[nb] = len(loops)
            loops.append(nb)
            parent.append(k)
            if nb == b:
                chain = []
                j = len(loops) - 1
                while j >= 0:
                    chain.append(loops[j])
                    j = parent[j]
                chain.reverse()
                assert check_chain(K, chain) is None
                return SearchResult(SearchStatus.FOUND, chain, explored, length(a))
            queue.append(ids[nb])
    return SearchResult(SearchStatus.EXHAUSTED, None, explored, length(a))


contiguity_equivalent_samelength = contiguity_search


def extension_contiguity_search(K, a: Loop, b: Loop, max_len: int,
                                budget: int = 10**5) -> SearchResult:
    """Trivially extend both loops to each common length m <= max_len and search.

    A FOUND result carries the chain between the extended loops. Anything else
    is reported as BUDGET: an exhausted class at every length tried is still
    no proof of inequivalence, since longer extensions were not examined.
    """
    lo = max(length(a), length(b))
    if max_len < lo:
        raise PathError(f"max_len {max_len} below the loop lengths ({lo})")
    if budget <= 0:
        raise ValueError("budget must be positive")
    spent = 0
    notes = []
    for m in range(lo, max_len + 1):
        res = contiguity_search(K, same_size(a, m), same_size(b, m), budget - spent)
        spent += res.explored
        if res.found:
            res.explored = spent
            res.notes = notes
            return res
        notes.append(f"length {m}: {res.status}")
        if res.status is SearchStatus.BUDGET or spent >= budget:
            break
    return SearchResult(SearchStatus.BUDGET, None, spent, None, notes)


extension_contiguity_equivalent = extension_contiguity_search


def random_loop(X: SimplicialComplex, m: int, rng) -> Loop:
    """Uniform-step random based loop of length m (steps may repeat a vertex)."""
    dist = {X.basepoint: 0}
    frontier = [X.basepoint]
    while frontier:
        nxt = []
        for u in frontier:
            for w in X.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    path = [X.basepoint]
    for t in range(m):
        left = m - t - 1
        opts = [w for w in (path[-1],) + X.neighbors(path[-1]) if dist.get(w, m + 1) <= left]
        path.append(rng.choice(sorted(opts)))
    return tuple(path)
