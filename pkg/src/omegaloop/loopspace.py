"""The simplicial loop space ΩX truncated at loop length k.

Vertices are based edge loops (tuples of vertex ids). A finite set of loops
is a simplex when their lengths are m-1 or m (at least one m) and, after
padding the short ones with a trailing x0, every pair of adjacent columns
spans a simplex of X.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex import SimplicialComplex, SimplicialMap
from .paths import (PathError, check_chain, concatenate, contiguous_neighbors,
                    contiguous_paths, extend, extend_once, length, same_size,
                    trivial_extend, validate_loop)

Loop = tuple


class OmegaError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts or {}


def constant(X, m: int) -> Loop:
    return (X.basepoint,) * (m + 1)


def bar(l: Loop) -> Loop:
    return trivial_extend(l, 1)


# -- the simplex condition ---------------------------------------------------

def omega_simplex_witness(X: SimplicialComplex, loops: Iterable[Loop]):
    """None if ``loops`` is a simplex of ΩX, else ``(reason, detail)``.

    ``("lengths", (lo, hi))`` for a length spread over one, or
    ``("columns", (i, i+1))`` for the first adjacent column pair whose union
    is not a simplex of X (0-based column indices).
    """
    loops = list(loops)
    if not loops:
        raise OmegaError("empty set of loops")
    lens = [len(l) - 1 for l in loops]
    M, lo = max(lens), min(lens)
    if M - lo > 1:
        return ("lengths", (lo, M))
    x0bit = 1 << X.basepoint
    cols = [0] * (M + 1)
    for l in loops:
        for i, v in enumerate(l):
            cols[i] |= 1 << v
        if len(l) <= M:
            cols[M] |= x0bit
    test = X.is_simplex_mask
    if M == 0:
        return None if test(cols[0]) else ("columns", (0, 0))
    for i in range(M):
        if not test(cols[i] | cols[i + 1]):
            return ("columns", (i, i + 1))
    return None


def omega_is_simplex(X: SimplicialComplex, loops: Iterable[Loop]) -> bool:
    return omega_simplex_witness(X, loops) is None


class OmegaComplex:
    """ΩX as an implicit (infinite) complex: only membership is answered."""

    def __init__(self, X: SimplicialComplex):
        self.X = X
        self.basepoint = (X.basepoint,)

    def is_simplex(self, loops) -> bool:
        return omega_is_simplex(self.X, loops)


# -- enumeration -------------------------------------------------------------

def _dist_to_base(X: SimplicialComplex) -> dict[int, int]:
    dist = {X.basepoint: 0}
    q = deque([X.basepoint])
    while q:
        u = q.popleft()
        for w in X.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def enumerate_loops(X: SimplicialComplex, k: int, exact: bool = False) -> list[Loop]:
    """All based loops of length <= k (or == k), ordered by length then lexicographically."""
    if k < 0:
        raise OmegaError("k must be nonnegative")
    dist = _dist_to_base(X)
    x0 = X.basepoint
    steps = {v: sorted((v,) + X.neighbors(v)) for v in dist}
    out = []
    for m in ([k] if exact else range(k + 1)):
        if m == 0:
            out.append((x0,))
            continue
        path = [x0]

        def rec(depth):
            if depth == m:
                if path[-1] == x0:
                    out.append(tuple(path))
                return
            for w in steps[path[-1]]:
                if dist[w] <= m - depth - 1:
                    path.append(w)
                    rec(depth + 1)
                    path.pop()

        rec(0)
    return out


def omega_neighbors(X: SimplicialComplex, l: Loop, shorter: bool = True):
    """Loops adjacent to l in ΩX with the same length, and with length one less."""
    m = len(l) - 1
    x0 = X.basepoint
    same, down = [], []
    for nb in contiguous_neighbors(X, l):
        if nb != l:
            same.append(nb)
        if shorter and m >= 1 and nb[m - 1] == x0:
            down.append(nb[:-1])
    return same, down


@dataclass
class OmegaSkeleton:
    X: SimplicialComplex
    k: int
    d: int
    loops: list[Loop]
    index: dict[Loop, int]
    simplex_lists: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)

    @property
    def basepoint(self) -> int:
        return self.index[(self.X.basepoint,)]

    @property
    def n_vertices(self) -> int:
        return len(self.loops)

    @property
    def dimension(self) -> int:
        return max(dim for dim, s in self.simplex_lists.items() if s)

    def simplices(self, dim: int) -> list[tuple[int, ...]]:
        if dim > self.d:
            raise OmegaError(f"skeleton built only up to dimension {self.d}")
        return self.simplex_lists.get(dim, [])

    def counts(self) -> dict[int, int]:
        return {dim: len(s) for dim, s in sorted(self.simplex_lists.items())}

    def stratum(self, m: int) -> list[int]:
        return [i for i, l in enumerate(self.loops) if len(l) - 1 == m]

    def stratum_simplices(self, m: int) -> list[tuple[int, ...]]:
        out = []
        for dim in sorted(self.simplex_lists):
            out.extend(s for s in self.simplex_lists[dim]
                       if all(len(self.loops[i]) - 1 == m for i in s))
        return out

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in self.loops]
        for a, b in self.simplices(1):
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def edge_group(self, base: int | None = None):
        """Edge group of the component containing vertex ``base`` (default x0)."""
        from .groups import EdgeGroup
        lab = lambda i: "[" + ",".join(self.X.label(v) for v in self.loops[i]) + "]"
        return EdgeGroup(list(range(len(self.loops))), self.simplices(1), self.simplices(2),
                         self.basepoint if base is None else base, names=lab)

    def literal(self, i: int) -> list[str]:
        return [self.X.label(v) for v in self.loops[i]]

    def to_json(self) -> dict:
        return {
            "max_len": self.k,
            "max_dim": self.d,
            "vertices": [self.literal(i) for i in range(len(self.loops))],
            "simplices": {str(dim): [list(s) for s in self.simplex_lists[dim]]
                          for dim in sorted(self.simplex_lists) if dim >= 1},
        }


def build_skeleton(X: SimplicialComplex, k: int, d: int, cap: int = 5 * 10**6) -> OmegaSkeleton:
    """The d-skeleton of ΩX(k).

    Edges come from positionwise neighbor generation; higher simplices by
    extending each simplex with common neighbors of larger id, re-testing the
    full column condition every time (ΩX is not a flag complex).
    """
    if d < 1:
        raise OmegaError("d must be at least 1")
    loops = enumerate_loops(X, k)
    if len(loops) > cap:
        raise ResourceCapError(f"{len(loops)} loops exceed cap {cap}", {"vertices": len(loops)})
    index = {l: i for i, l in enumerate(loops)}
    adj: list[set[int]] = [set() for _ in loops]
    n_edges = 0
    for i, l in enumerate(loops):
        same, down = omega_neighbors(X, l)
        for nb in same:
            j = index.get(nb)
            if j is not None and j > i:
                adj[i].add(j)
                adj[j].add(i)
                n_edges += 1
        for nb in down:
            j = index[nb]
            adj[i].add(j)
            adj[j].add(i)
            n_edges += 1
        if n_edges > cap:
            raise ResourceCapError(f"edge count exceeds cap {cap}",
                                   {"vertices": len(loops), "edges": n_edges})
    simp = {0: [(i,) for i in range(len(loops))]}
    simp[1] = sorted((i, j) for i in range(len(loops)) for j in adj[i] if j > i)
    total = len(loops) + len(simp[1])
    for dim in range(2, d + 1):
        layer = []
        for s in simp[dim - 1]:
            common = set.intersection(*(adj[v] for v in s))
            top = s[-1]
            base = [loops[v] for v in s]
            for c in sorted(c for c in common if c > top):
                if omega_simplex_witness(X, base + [loops[c]]) is None:
                    layer.append(s + (c,))
            if total + len(layer) > cap:
                raise ResourceCapError(f"simplex count exceeds cap {cap} at dimension {dim}",
                                       {**{str(k_): len(v) for k_, v in simp.items()},
                                        str(dim): len(layer)})
        simp[dim] = layer
        total += len(layer)
        if not layer:
            break
    for dim in range(len(simp), d + 1):
        simp.setdefault(dim, [])
    return OmegaSkeleton(X, k, d, loops, index, simp)


# -- components --------------------------------------------------------------

@dataclass
class Components:
    labels: list[int]  # component id per vertex, numbered by first vertex
    representatives: list[int]
    sizes: list[int]

    @property
    def count(self) -> int:
        return len(self.sizes)


def union_find_components(n: int, edges: Iterable[tuple[int, int]]) -> Components:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    ids: dict[int, int] = {}
    labels, reps, sizes = [], [], []
    for v in range(n):
        r = find(v)
        if r not in ids:
            ids[r] = len(reps)
            reps.append(v)
            sizes.append(0)
        labels.append(ids[r])
        sizes[ids[r]] += 1
    return Components(labels, reps, sizes)


def components(S: OmegaSkeleton) -> Components:
    return union_find_components(S.n_vertices, S.simplices(1))


# -- lemma constructions -----------------------------------------------------

def component_invariants(S: OmegaSkeleton) -> list[dict]:
    """Abelianized edge group of each component, based at its representative.

    Only invariants are reported; equal invariants do not certify isomorphic
    groups.
    """
    cs = components(S)
    out = []
    for c, r in enumerate(cs.representatives):
        ab = S.edge_group(r).abelianization()
        out.append({"component": c, "representative": S.literal(r), "size": cs.sizes[c],
                    "rank": ab.rank, "torsion": list(ab.torsion)})
    return out


def sigma_union_extension(X: SimplicialComplex, sigma: Sequence[Loop]) -> tuple[Loop, ...]:
    """``σ ∪ σ̄`` for a simplex of equal-length loops; checked."""
    sigma = list(dict.fromkeys(sigma))
    if len({len(l) for l in sigma}) != 1:
        raise OmegaError("sigma mixes loop lengths")
    w = omega_simplex_witness(X, sigma)
    if w is not None:
        raise OmegaError(f"input is not a simplex: {w}")
    out = tuple(sigma) + tuple(bar(l) for l in sigma)
    w = omega_simplex_witness(X, out)
    if w is not None:
        raise AssertionError(f"extension lemma failed: {w}")
    return out


def three_simplex_family(X: SimplicialComplex, kind: str, *args) -> tuple[Loop, ...]:
    """Emit the simplex asserted by the 3-simplex extension lemma.

    a: (l, l') contiguous, same length      -> {l, l', l̄, l̄'}
    b: (l, l') edge, |l'| = |l| - 1          -> {l, l', l̄'}
    c: (l, l', i) contiguous, 0 <= i < m     -> {lα_i, l'α_i, lα_i+1, l'α_i+1}
    d: (l1, l1', l2, l2') l1 ~ l1', {l2, l2'} an edge, |l2'| in {|l2|, |l2|-1}
                                             -> {l1·l2, l1·l2', l1'·l2, l1'·l2'}
    Duplicates collapse, so degenerate inputs give a smaller simplex.
    """
    def need(cond, msg):
        if not cond:
            raise OmegaError(f"hypothesis of case {kind} fails: {msg}")

    for l in args:
        if isinstance(l, tuple):
            validate_loop(X, l)
    if kind == "a":
        l, lp = args
        need(len(l) == len(lp) and contiguous_paths(X, l, lp), "loops not contiguous")
        out = (l, lp, bar(l), bar(lp))
    elif kind == "b":
        l, lp = args
        need(len(lp) == len(l) - 1, "lengths must be m and m-1")
        need(omega_is_simplex(X, [l, lp]), "not an edge of ΩX")
        out = (l, lp, bar(lp))
    elif kind == "c":
        l, lp, i = args
        need(len(l) == len(lp) and contiguous_paths(X, l, lp), "loops not contiguous")
        need(0 <= i <= len(l) - 2, "index out of range")
        out = (extend_once(l, i), extend_once(lp, i), extend_once(l, i + 1), extend_once(lp, i + 1))
    elif kind == "d":
        l1, l1p, l2, l2p = args
        need(len(l1) == len(l1p) and contiguous_paths(X, l1, l1p), "l1, l1' not contiguous")
        need(len(l2) - len(l2p) in (0, 1), "l2' must have length n or n-1")
        need(omega_is_simplex(X, [l2, l2p]), "{l2, l2'} not an edge of ΩX")
        out = (concatenate(l1, l2), concatenate(l1, l2p), concatenate(l1p, l2), concatenate(l1p, l2p))
    else:
        raise OmegaError(f"unknown case {kind!r}")
    out = tuple(dict.fromkeys(out))
    w = omega_simplex_witness(X, out)
    if w is not None:
        raise AssertionError(f"case {kind} emitted a non-simplex: {w}")
    return out


# -- maps of loop spaces -----------------------------------------------------

@dataclass
class LoopMap:
    """A vertex map on a built skeleton: ``images[i]`` is the image loop of vertex i."""

    source: OmegaSkeleton
    target_X: SimplicialComplex
    images: list[Loop]

    def __call__(self, i: int) -> Loop:
        return self.images[i]

    def image_of(self, simplex: Iterable[int]) -> frozenset:
        return frozenset(self.images[i] for i in simplex)

    def simplicial_witness(self, dims: Iterable[int] | None = None):
        """First stored simplex whose image fails the column condition."""
        for dim in (dims if dims is not None else sorted(self.source.simplex_lists)):
            for s in self.source.simplices(dim):
                if omega_simplex_witness(self.target_X, self.image_of(s)) is not None:
                    return s
        return None

    def ids_in(self, T: OmegaSkeleton) -> list[int]:
        try:
            return [T.index[l] for l in self.images]
        except KeyError as e:
            raise OmegaError(f"target skeleton too small: image {e.args[0]} has length "
                             f"{len(e.args[0]) - 1} > {T.k}") from None


def omega_map(f: SimplicialMap, S: OmegaSkeleton, check: bool = True) -> LoopMap:
    """Ωf on the vertices of S: ``l -> f∘l``."""
    if f.source != S.X:
        raise OmegaError("map source is not the skeleton's complex")
    if not f.is_based:
        raise OmegaError("map is not based")
    g = f.assignment
    F = LoopMap(S, f.target, [tuple(g[v] for v in l) for l in S.loops])
    if check:
        bad = F.simplicial_witness()
        if bad is not None:
            raise AssertionError(f"Ωf sends simplex {bad} to a non-simplex")
    return F


def left_translate(ell: Loop, S: OmegaSkeleton, T: OmegaSkeleton | None = None,
                   check: bool = True) -> LoopMap:
    """``L_ℓ(l) = ℓ·l``. With a target skeleton T the images must be vertices of T."""
    validate_loop(S.X, ell)
    F = LoopMap(S, S.X, [concatenate(ell, l) for l in S.loops])
    if T is not None:
        F.ids_in(T)
    if check:
        bad = F.simplicial_witness()
        if bad is not None:
            raise AssertionError(f"left translation breaks simplex {bad}")
    return F


def right_translate_trivial(N: int, S: OmegaSkeleton, T: OmegaSkeleton | None = None,
                            check: bool = True) -> LoopMap:
    """``R(l) = l·x0^N``: right translation by a constant loop."""
    c = constant(S.X, N)
    F = LoopMap(S, S.X, [concatenate(l, c) for l in S.loops])
    if T is not None:
        F.ids_in(T)
    if check:
        bad = F.simplicial_witness()
        if bad is not None:
            raise AssertionError(f"right translation breaks simplex {bad}")
    return F


def maps_contiguity_witness(X, f_images: Sequence[Loop], g_images: Sequence[Loop],
                            simplices: Iterable[tuple[int, ...]]):
    """First simplex σ with f(σ) ∪ g(σ) not a simplex of ΩX, else None."""
    for s in simplices:
        if omega_simplex_witness(X, {f_images[i] for i in s} | {g_images[i] for i in s}) is not None:
            return s
    return None


@dataclass
class MapChainCertificate:
    stratum: int
    maps: list[list[Loop]]  # images of the stratum vertices under each map
    vertex_ids: list[int]
    valid: bool
    witness: tuple | None = None

    @property
    def length(self) -> int:
        return len(self.maps)


def translation_certificate(S: OmegaSkeleton, M: int, N: int = 0) -> MapChainCertificate:
    """Contiguity chain of maps ΩX[M] -> ΩX from ``L_{x0^N}`` to ``R_{x0^N}``.

    The i-th map repeats the i-th vertex N+1 times; the first is left
    translation and the last right translation by the constant loop. Each
    neighboring pair is checked over every stored simplex of the stratum.
    """
    ids = S.stratum(M)
    if not ids:
        raise OmegaError(f"stratum {M} is empty in this skeleton")
    simps = S.stratum_simplices(M)
    pos = {v: t for t, v in enumerate(ids)}
    local = [tuple(pos[v] for v in s) for s in simps]
    c = constant(S.X, N)
    maps = []
    for i in range(M + 1):
        maps.append([extend(S.loops[v], (i,) * (N + 1)) for v in ids])
    if maps[0] != [concatenate(c, S.loops[v]) for v in ids]:
        raise AssertionError("first map is not left translation")
    if maps[-1] != [concatenate(S.loops[v], c) for v in ids]:
        raise AssertionError("last map is not right translation")
    for i in range(M):
        w = maps_contiguity_witness(S.X, maps[i], maps[i + 1], local)
        if w is not None:
            return MapChainCertificate(M, maps, ids, False, (i, tuple(ids[t] for t in w)))
    return MapChainCertificate(M, maps, ids, True)


# -- paths in ΩX versus contiguity in X ---------------------------------------

def omega_path_to_chain(X, path: Sequence[Loop]) -> list[Loop]:
    """Same-size an edge path of ΩX; the result is a contiguity chain in X."""
    M = max(len(l) - 1 for l in path)
    chain = [same_size(l, M) for l in path]
    j = check_chain(X, chain)
    if j is not None:
        raise AssertionError(f"same-sized path is not contiguous at step {j}")
    return chain


def chain_to_omega_path(a: Loop, b: Loop, chain: Sequence[Loop]) -> list[Loop]:
    """Edge path in ΩX from a to b, given a contiguity chain between extensions.

    Climbs from a by trivial extensions to the chain's length, follows the
    chain, then descends to b.
    """
    M = len(chain[0]) - 1
    if chain[0] != same_size(a, M) or chain[-1] != same_size(b, M):
        raise OmegaError("chain does not join the trivial extensions of a and b")
    up = [same_size(a, m) for m in range(len(a) - 1, M)]
    down = [same_size(b, m) for m in range(M - 1, len(b) - 2, -1)]
    path = up + list(chain) + down
    return [l for t, l in enumerate(path) if t == 0 or l != path[t - 1]]


def is_omega_edge_path(X, path: Sequence[Loop]) -> int | None:
    """First index t where path[t], path[t+1] are neither equal nor adjacent."""
    for t in range(len(path) - 1):
        if path[t] != path[t + 1] and not omega_is_simplex(X, [path[t], path[t + 1]]):
            return t
    return None


# -- normalization of loops in ΩX ---------------------------------------------

@dataclass(frozen=True)
class Move:
    """Insert or delete ``vertex`` at ``pos``; legal when {prev, vertex, next} is a simplex."""

    op: str  # "insert" | "delete"
    pos: int
    vertex: Loop


class MoveError(AssertionError):
    pass


def apply_move(X, seq: list, mv: Move, check: bool = True) -> list:
    t = mv.pos
    if mv.op == "insert":
        if not (1 <= t <= len(seq) - 1):
            raise MoveError(f"insert position {t} out of range")
        a, b = seq[t - 1], seq[t]
        new = seq[:t] + [mv.vertex] + seq[t:]
    elif mv.op == "delete":
        if not (1 <= t <= len(seq) - 2) or seq[t] != mv.vertex:
            raise MoveError(f"delete at {t} does not match")
        a, b = seq[t - 1], seq[t + 1]
        new = seq[:t] + seq[t + 1:]
    else:
        raise MoveError(f"unknown move {mv.op}")
    if check and not omega_is_simplex(X, {a, mv.vertex, b}):
        raise MoveError(f"{mv.op} at {t}: {{prev, v, next}} is not a simplex of ΩX")
    return new


def replay_moves(X, start: Sequence[Loop], moves: Sequence[Move]) -> list[Loop]:
    seq = list(start)
    for mv in moves:
        seq = apply_move(X, seq, mv)
    return seq


@dataclass
class NormalForm:
    loop: list[Loop]
    M: int
    middle: list[Loop]
    moves: list[Move]

    def is_valid(self, X) -> bool:
        return is_normal_form(X, self.loop) == self.M


def is_normal_form(X, gamma: Sequence[Loop]) -> int | None:
    """M if gamma is x0^0..x0^M, (length-M loops), x0^M..x0^0, else None."""
    lens = [len(l) - 1 for l in gamma]
    M = max(lens)
    x0 = X.basepoint
    n = len(gamma)
    if n < 2 * M + 1:
        return None
    # with an empty middle the two ramps may share their peak
    for j in range(M + 1):
        if gamma[j] != (x0,) * (j + 1) or gamma[n - 1 - j] != (x0,) * (j + 1):
            return None
    if any(L != M for L in lens[M + 1:n - M - 1]):
        return None
    return M


def normalize_loop_in_omega(X: SimplicialComplex, gamma: Sequence[Loop],
                            k: int | None = None) -> NormalForm:
    """Bring an edge loop of ΩX based at the constant loop to the ramp form.

    The output is x0^0, x0^1, ..., x0^M, l^1, ..., l^p, x0^M, ..., x0^0 with
    every l^j of length exactly M (the longest loop in gamma). Every step is
    a single legal edge-group move, recorded in ``moves``; replaying them from
    gamma reproduces the output.

    Stage j lifts every middle loop of length j to its trivial extension
    (legal because both neighbours are at least as long), then extends both
    ramps from x0^j to x0^(j+1).
    """
    gamma = [tuple(l) for l in gamma]
    x0 = X.basepoint
    base = (x0,)
    if not gamma or gamma[0] != base or gamma[-1] != base:
        raise OmegaError("gamma is not based at the constant loop x0")
    for l in gamma:
        validate_loop(X, l)
    t = is_omega_edge_path(X, gamma)
    if t is not None:
        raise OmegaError(f"gamma is not an edge loop of ΩX at step {t}")
    M = max(len(l) - 1 for l in gamma)
    if k is not None and M > k:
        raise ResourceCapError(f"gamma needs loops of length {M} > cap {k}", {"required_k": M})

    seq = list(gamma)
    moves: list[Move] = []

    def do(op, pos, v):
        nonlocal seq
        mv = Move(op, pos, v)
        seq = apply_move(X, seq, mv)
        moves.append(mv)

    # seq = left ramp (lo entries) + core + right ramp (ro entries)
    lo, ro = 1, 1
    if len(seq) == 1:
        return NormalForm(seq, 0, [], moves)
    for j in range(M):
        # lift core loops of length j
        t = lo
        while t < len(seq) - ro:
            v = seq[t]
            if len(v) - 1 == j:
                do("insert", t + 1, bar(v))
                do("delete", t, v)
            t += 1
        if len(seq) - lo - ro <= 0:
            break
        up = (x0,) * (j + 2)
        # extend the left ramp
        if seq[lo] != up:
            do("insert", lo, up)
        lo += 1
        # extend the right ramp
        if len(seq) - lo - ro <= 0:
            break
        r = len(seq) - ro - 1
        if seq[r] != up:
            do("insert", r + 1, up)
        ro += 1
    core = seq[lo:len(seq) - ro]
    if not core and seq[lo - 1] == seq[lo] and len(seq) > 2:
        do("delete", lo, seq[lo])
    MM = is_normal_form(X, seq)
    if MM != M:
        raise AssertionError("normalization did not reach the ramp form")
    n = len(seq)
    middle = seq[M + 1:n - M - 1] if n >= 2 * M + 2 else []
    return NormalForm(seq, M, middle, moves)
