"""Stone's chain complex N(k), integer homology, and the vertex-level comparison map.

A chain of length k is a tuple (σ_1, ..., σ_{k-1}) of simplices of X with
σ_i ∪ σ_{i+1} a simplex for every i, where σ_0 = σ_k = {x0}. Chains are the
cells of a product-of-simplices complex; the cell dimension is Σ dim σ_i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .complex import SimplicialComplex, bits
from .loopspace import (OmegaSkeleton, ResourceCapError, components,
                        union_find_components)
from .paths import same_size
from .smith import invariant_factors

Cell = tuple  # chain of simplices, each a sorted vertex tuple


class HomologyError(ValueError):
    pass


@dataclass
class HomologyResult:
    betti: list[int]
    torsion: list[list[int]]
    cells: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {str(d): {"betti": b, "torsion": t}
                for d, (b, t) in enumerate(zip(self.betti, self.torsion))}

    def agrees(self, other: "HomologyResult", upto: int) -> bool:
        return (self.betti[:upto + 1] == other.betti[:upto + 1]
                and self.torsion[:upto + 1] == other.torsion[:upto + 1])


# -- exact sparse reduction --------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _axpy(col: dict, q: int, other: dict):
    """col -= q * other, in place."""
    for r, v in other.items():
        nv = col.get(r, 0) - q * v
        if nv:
            col[r] = nv
        else:
            col.pop(r, None)


def reduce_boundary(columns: Iterable[dict[int, int]]) -> list[int]:
    """Nonzero Smith invariants of the matrix whose columns are given.

    Column reduction by lowest nonzero row, using only unimodular column
    operations (a 2x2 gcd step whenever the pivot does not divide). If every
    surviving pivot is a unit the cokernel is free and all invariants are 1;
    otherwise the reduced columns go through the general routine.
    """
    reduced: list[dict[int, int]] = []
    pivot_of: dict[int, int] = {}
    for col in columns:
        col = {r: v for r, v in col.items() if v}
        while col:
            low = max(col)
            j = pivot_of.get(low)
            if j is None:
                break
            pc = reduced[j]
            a, b = col[low], pc[low]
            if a % b == 0:
                _axpy(col, a // b, pc)
            else:
                g, s, t = _xgcd(a, b)
                u = {}
                for r in set(col) | set(pc):
                    val = s * col.get(r, 0) + t * pc.get(r, 0)
                    if val:
                        u[r] = val
                v = {}
                for r in set(col) | set(pc):
                    val = (b // g) * col.get(r, 0) - (a // g) * pc.get(r, 0)
                    if val:
                        v[r] = val
                reduced[j] = u
                col = v
        if col:
            pivot_of[max(col)] = len(reduced)
            reduced.append(col)
    if all(abs(c[max(c)]) == 1 for c in reduced):
        return [1] * len(reduced)
    return invariant_factors(reduced)


def homology_from_boundaries(n_cells: Sequence[int], boundaries: dict[int, list[dict[int, int]]],
                             top: int) -> HomologyResult:
    """``boundaries[d]`` holds the columns of ∂_d (one per d-cell)."""
    factors = {}
    for d in range(1, top + 2):
        factors[d] = reduce_boundary(boundaries.get(d, []))
    betti, torsion = [], []
    for d in range(top + 1):
        rank_out = len(factors.get(d, [])) if d >= 1 else 0
        rank_in = len(factors[d + 1])
        betti.append(n_cells[d] - rank_out - rank_in)
        torsion.append([x for x in factors[d + 1] if x > 1])
    return HomologyResult(betti, torsion, list(n_cells[:top + 2]))


# -- simplicial homology -----------------------------------------------------

def _simplex_boundary(s: tuple, index: dict) -> dict[int, int]:
    col = {}
    for t in range(len(s)):
        col[index[s[:t] + s[t + 1:]]] = (-1) ** t
    return col


def simplicial_homology(K, top_dim: int = 2) -> HomologyResult:
    """Integer homology up to ``top_dim`` of a complex exposing ``simplices(d)``.

    Works for a SimplicialComplex or an OmegaSkeleton; the latter must be
    built to dimension top_dim + 1 for the top Betti number to be right.
    """
    if isinstance(K, OmegaSkeleton) and K.d < top_dim + 1:
        raise HomologyError(f"skeleton has dimension {K.d}; need {top_dim + 1} for H_{top_dim}")
    cells = []
    for d in range(top_dim + 2):
        try:
            cells.append(sorted(K.simplices(d)))
        except Exception:
            cells.append([])
    idx = [{s: i for i, s in enumerate(c)} for c in cells]
    bnd = {d: [_simplex_boundary(s, idx[d - 1]) for s in cells[d]] for d in range(1, top_dim + 2)}
    return homology_from_boundaries([len(c) for c in cells], bnd, top_dim)


# -- Stone's N(k) ------------------------------------------------------------

def enumerate_chains(X: SimplicialComplex, k: int, max_dim: int | None = None,
                     cap: int = 5 * 10**6) -> list[Cell]:
    """All chains of length k, optionally only those of cell dimension <= max_dim."""
    if k < 1:
        raise HomologyError("k must be at least 1")
    from .loopspace import _dist_to_base
    dist = _dist_to_base(X)
    x0m = 1 << X.basepoint
    simp = []  # (mask, tuple, dim, farthest distance to x0)
    for s in X.all_simplices():
        if all(v in dist for v in s):
            m = 0
            for v in s:
                m |= 1 << v
            simp.append((m, s, len(s) - 1, max(dist[v] for v in s)))
    test = X.is_simplex_mask
    out: list[Cell] = []
    cur: list[tuple] = []

    def rec(i, prev_mask, dim_used):
        if i == k:
            if test(prev_mask | x0m):
                out.append(tuple(cur))
                if len(out) > cap:
                    raise ResourceCapError(f"more than {cap} chains", {"chains": len(out)})
            return
        for m, s, d, far in simp:
            if far > min(i, k - i):
                continue
            if max_dim is not None and dim_used + d > max_dim:
                continue
            if test(prev_mask | m):
                cur.append(s)
                rec(i + 1, m, dim_used + d)
                cur.pop()

    rec(1, x0m, 0)
    return sorted(out, key=lambda c: (cell_dim(c), c))


def cell_dim(c: Cell) -> int:
    return sum(len(s) - 1 for s in c)


def cell_boundary(c: Cell) -> dict[Cell, int]:
    """Product rule with the Koszul sign (-1)^(dim σ_1 + ... + dim σ_{j-1})."""
    out: dict[Cell, int] = {}
    pre = 0
    for j, s in enumerate(c):
        if len(s) > 1:
            for t in range(len(s)):
                face = c[:j] + (s[:t] + s[t + 1:],) + c[j + 1:]
                out[face] = out.get(face, 0) + (-1) ** (pre + t)
        pre += len(s) - 1
    return {f: v for f, v in out.items() if v}


@dataclass
class StoneComplex:
    X: SimplicialComplex
    k: int
    cells: list[list[Cell]]  # by dimension
    index: list[dict[Cell, int]]

    @property
    def n_cells(self) -> list[int]:
        return [len(c) for c in self.cells]

    def boundary_columns(self, d: int) -> list[dict[int, int]]:
        idx = self.index[d - 1]
        return [{idx[f]: v for f, v in cell_boundary(c).items()} for c in self.cells[d]]

    def check_d_squared(self) -> bool:
        for d in range(2, len(self.cells)):
            for c in self.cells[d]:
                acc: dict = {}
                for f, v in cell_boundary(c).items():
                    for g, w in cell_boundary(f).items():
                        acc[g] = acc.get(g, 0) + v * w
                if any(acc.values()):
                    return False
        return True

    def homology(self, top_dim: int = 2) -> HomologyResult:
        if len(self.cells) < top_dim + 2:
            raise HomologyError("cells enumerated below the needed dimension")
        bnd = {d: self.boundary_columns(d) for d in range(1, top_dim + 2)}
        return homology_from_boundaries(self.n_cells, bnd, top_dim)

    def vertex_components(self):
        verts = self.cells[0]
        idx = self.index[0]
        edges = []
        for c in self.cells[1] if len(self.cells) > 1 else []:
            f = list(cell_boundary(c))
            edges.append((idx[f[0]], idx[f[1]]))
        return union_find_components(len(verts), edges)


def chain_complex_of_N(X: SimplicialComplex, k: int, max_dim: int = 3,
                       check: bool = True) -> StoneComplex:
    chains = enumerate_chains(X, k, max_dim)
    top = max_dim
    cells: list[list[Cell]] = [[] for _ in range(top + 1)]
    for c in chains:
        cells[cell_dim(c)].append(c)
    index = [{c: i for i, c in enumerate(cs)} for cs in cells]
    N = StoneComplex(X, k, cells, index)
    if check and not N.check_d_squared():
        raise AssertionError("boundary of boundary is nonzero")
    return N


def stone_vertex_image(X: SimplicialComplex, l: Sequence[int], k: int) -> Cell:
    """The vertex ((l)_k(1), ..., (l)_k(k-1)) of N(k)."""
    if len(l) - 1 > k:
        raise HomologyError(f"loop length {len(l) - 1} exceeds k = {k}")
    lk = same_size(tuple(l), k)
    return tuple((v,) for v in lk[1:k])


@dataclass
class ComponentComparison:
    omega_components: int
    stone_components: int
    bijective: bool
    respects_edges: bool
    mapping: dict[int, int]


def compare_components(S: OmegaSkeleton, N: StoneComplex) -> ComponentComparison:
    """Check that l -> stone_vertex_image(l) induces a bijection on components."""
    if S.k != N.k:
        raise HomologyError("skeleton and N(k) use different k")
    cs = components(S)
    cn = N.vertex_components()
    img = [N.index[0][stone_vertex_image(S.X, l, S.k)] for l in S.loops]
    respects = all(cn.labels[img[a]] == cn.labels[img[b]] for a, b in S.simplices(1))
    mapping: dict[int, int] = {}
    ok = respects
    for v, comp in enumerate(cs.labels):
        target = cn.labels[img[v]]
        if mapping.setdefault(comp, target) != target:
            ok = False
    hit = set(mapping.values())
    bij = ok and len(hit) == len(mapping) == cn.count
    return ComponentComparison(cs.count, cn.count, bij, respects, mapping)
