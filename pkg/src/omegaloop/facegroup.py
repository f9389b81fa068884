"""Face spheres, their product and extensions, and the map Φ into loops of ΩX.

A face sphere of size m x n is stored as ``rows[j][i] = f(i, j)`` for
0 <= i <= m, 0 <= j <= n: column i is the position along a loop and row j is
"time". Each row is therefore a loop of length m, and the rows in order form
an edge path in the stratum ΩX[m].
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .complex import SimplicialComplex, mask_of
from .loopspace import (Move, MoveError, OmegaError, apply_move, bar,
                        omega_is_simplex, omega_simplex_witness)
from .paths import (SearchResult, SearchStatus, concatenate, contiguity_search,
                    contiguous_neighbors, extend, same_size)
from .smith import smith_normal_form

Loop = tuple


class FaceSphereError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FaceSphere:
    X: SimplicialComplex
    rows: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.rows[0]) - 1

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    @property
    def dims(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __call__(self, i: int, j: int) -> int:
        return self.rows[j][i]

    def to_labels(self) -> list[list[str]]:
        return [[self.X.label(v) for v in row] for row in self.rows]

    def __str__(self):
        w = max(len(l) for l in self.X.labels)
        return "\n".join(" ".join(self.X.label(v).rjust(w) for v in row) for row in reversed(self.rows))


def square_witness(X: SimplicialComplex, rows) -> tuple[int, int] | None:
    for j in range(len(rows) - 1):
        a, b = rows[j], rows[j + 1]
        for i in range(len(a) - 1):
            if not X.is_simplex_mask(mask_of((a[i], a[i + 1], b[i], b[i + 1]))):
                return (i, j)
    return None


def validate_face_sphere(X: SimplicialComplex, grid) -> FaceSphere:
    rows = tuple(tuple(r) for r in grid)
    if not rows or not rows[0]:
        raise FaceSphereError("empty grid")
    if len({len(r) for r in rows}) != 1:
        raise FaceSphereError("grid is not rectangular")
    for r in rows:
        for v in r:
            if not (isinstance(v, int) and 0 <= v < X.n_vertices):
                raise FaceSphereError(f"{v!r} is not a vertex")
    x0 = X.basepoint
    m, n = len(rows[0]) - 1, len(rows) - 1
    for j, r in enumerate(rows):
        for i, v in enumerate(r):
            if (i in (0, m) or j in (0, n)) and v != x0:
                raise FaceSphereError(f"boundary value at ({i}, {j}) is not the basepoint", (i, j))
    w = square_witness(X, rows)
    if w is not None:
        raise FaceSphereError(f"square {w} does not span a simplex", w)
    return FaceSphere(X, rows)


def face_sphere_from_labels(X: SimplicialComplex, grid) -> FaceSphere:
    return validate_face_sphere(X, [[X.vid(lab) for lab in row] for row in grid])


def read_face_sphere(X: SimplicialComplex, path) -> FaceSphere:
    with open(path, encoding="utf-8") as fh:
        return face_sphere_from_labels(X, json.load(fh))


def constant_sphere(X: SimplicialComplex, m: int, n: int) -> FaceSphere:
    return FaceSphere(X, tuple((X.basepoint,) * (m + 1) for _ in range(n + 1)))


def fs_contiguity_witness(f: FaceSphere, g: FaceSphere) -> tuple[int, int] | None:
    """First unit cell (i, j) on which f ∪ g is not a simplex."""
    if f.dims != g.dims:
        raise FaceSphereError(f"dims differ: {f.dims} vs {g.dims}")
    X = f.X
    for j in range(f.n):
        for i in range(f.m):
            cell = (f(i, j), f(i + 1, j), f(i, j + 1), f(i + 1, j + 1),
                    g(i, j), g(i + 1, j), g(i, j + 1), g(i + 1, j + 1))
            if not X.is_simplex_mask(mask_of(cell)):
                return (i, j)
    return None


def fs_contiguous(f: FaceSphere, g: FaceSphere) -> bool:
    return fs_contiguity_witness(f, g) is None


# -- constructions -----------------------------------------------------------

def fs_product(f: FaceSphere, g: FaceSphere) -> FaceSphere:
    """Block-diagonal product: f at the bottom left, g at the top right."""
    if f.X != g.X:
        raise FaceSphereError("spheres live in different complexes")
    x0 = f.X.basepoint
    m, n, r, s = f.m, f.n, g.m, g.n
    rows = []
    for j in range(n + s + 2):
        row = []
        for i in range(m + r + 2):
            if i <= m and j <= n:
                row.append(f(i, j))
            elif i >= m + 1 and j >= n + 1:
                row.append(g(i - m - 1, j - n - 1))
            else:
                row.append(x0)
        rows.append(tuple(row))
    return validate_face_sphere(f.X, rows)


def fs_repeat(f: FaceSphere, I: Sequence[int] = (), J: Sequence[int] = ()) -> FaceSphere:
    """``f ∘ (α_I × α_J)``: repeat columns by I and rows by J."""
    I, J = tuple(I), tuple(J)
    rows = tuple(extend(row, I) for row in f.rows)
    rows = extend(rows, J)
    return validate_face_sphere(f.X, rows)


def fs_trivial_extend(f: FaceSphere, r: int, s: int) -> FaceSphere:
    return fs_repeat(f, (f.m,) * r, (f.n,) * s)


def transpose(f: FaceSphere) -> FaceSphere:
    return validate_face_sphere(f.X, tuple(zip(*f.rows)))


def fs_to_omega_loop(f: FaceSphere) -> tuple[Loop, ...]:
    """γ_f: the rows, an edge path in ΩX[m] from x0^m to x0^m."""
    return f.rows


def omega_loop_to_fs(X: SimplicialComplex, gamma: Sequence[Loop]) -> FaceSphere:
    lens = {len(l) for l in gamma}
    if len(lens) != 1:
        raise FaceSphereError("gamma mixes strata")
    return validate_face_sphere(X, gamma)


def phi(f: FaceSphere) -> tuple[Loop, ...]:
    """Φ(f) = x0^0, ..., x0^m, rows 1..n-1, x0^m, ..., x0^0 (length 2m + n)."""
    x0 = f.X.basepoint
    up = tuple((x0,) * (q + 1) for q in range(f.m + 1))
    return up + f.rows[1:-1] + tuple(reversed(up))


def omega_product(a: Sequence[Loop], b: Sequence[Loop]) -> tuple[Loop, ...]:
    """Product of two edge loops of ΩX at the constant loop (no doubled basepoint)."""
    if a[-1] != b[0]:
        raise OmegaError("loops do not meet")
    return tuple(a) + tuple(b[1:])


# -- equivalence search ------------------------------------------------------

class _Stratum:
    """ΩX[m] seen as a complex for the generic contiguity search in ``paths``."""

    def __init__(self, X: SimplicialComplex):
        self.X = X
        self.candidates = lru_cache(maxsize=None)(self._candidates)

    def _candidates(self, row):
        return sorted(contiguous_neighbors(self.X, row))

    def is_simplex(self, rows) -> bool:
        return omega_is_simplex(self.X, rows)


def fs_equivalent(f: FaceSphere, g: FaceSphere, mbar: int | None = None,
                  nbar: int | None = None, budget: int = 10**5) -> SearchResult:
    """Search for a contiguity chain between trivial extensions of f and g.

    Dims run over all pairs up to (mbar, nbar), default two beyond the larger
    inputs. A chain of face spheres is returned as a chain of row tuples;
    anything short of FOUND is inconclusive.
    """
    m0, n0 = max(f.m, g.m), max(f.n, g.n)
    mbar = m0 + 2 if mbar is None else mbar
    nbar = n0 + 2 if nbar is None else nbar
    if mbar < m0 or nbar < n0:
        raise FaceSphereError("caps below the sphere dims")
    K = _Stratum(f.X)
    spent = 0
    notes = []
    for total in range(m0 + n0, mbar + nbar + 1):
        for mm in range(m0, mbar + 1):
            nn = total - mm
            if not (n0 <= nn <= nbar):
                continue
            a = fs_trivial_extend(f, mm - f.m, nn - f.n).rows
            b = fs_trivial_extend(g, mm - g.m, nn - g.n).rows
            if spent >= budget:
                return SearchResult(SearchStatus.BUDGET, None, spent, None, notes)
            res = contiguity_search(K, a, b, budget - spent)
            spent += res.explored
            notes.append(f"{mm}x{nn}: {res.status}")
            if res.found:
                res.explored = spent
                res.notes = notes
                return res
    return SearchResult(SearchStatus.BUDGET, None, spent, None, notes)


# -- certificates in the edge group of ΩX ------------------------------------

@dataclass
class OmegaCertificate:
    """A sequence of edge-group steps between two edge loops of ΩX.

    Each step is ``("move", Move)`` (insert or delete one vertex across a
    2-simplex, or a repeat) or ``("contiguity", loop)`` (replace the whole
    loop by a contiguous one of the same length).
    """

    start: tuple[Loop, ...]
    steps: list = field(default_factory=list)

    def end(self, X) -> list[Loop]:
        return replay_certificate(X, self.start, self.steps)

    def __len__(self):
        return len(self.steps)


def omega_loops_contiguous(X, a: Sequence[Loop], b: Sequence[Loop]) -> int | None:
    """First t where {a_t, a_t+1, b_t, b_t+1} is not a simplex of ΩX."""
    if len(a) != len(b):
        return -1
    for t in range(len(a) - 1):
        if not omega_is_simplex(X, {a[t], a[t + 1], b[t], b[t + 1]}):
            return t
    return None


def replay_certificate(X, start, steps) -> list[Loop]:
    seq = list(start)
    for n, (kind, data) in enumerate(steps):
        if kind == "move":
            seq = apply_move(X, seq, data)
        elif kind == "contiguity":
            data = list(data)
            t = omega_loops_contiguous(X, seq, data)
            if t is not None or seq[0] != data[0] or seq[-1] != data[-1]:
                raise MoveError(f"step {n}: loops not contiguous rel endpoints (at {t})")
            seq = data
        else:
            raise MoveError(f"unknown step kind {kind!r}")
    return seq


class _Recorder:
    def __init__(self, X, seq):
        self.X = X
        self.seq = list(seq)
        self.steps = []

    def move(self, op, pos, v):
        mv = Move(op, pos, v)
        self.seq = apply_move(self.X, self.seq, mv)
        self.steps.append(("move", mv))

    def replace(self, new):
        new = list(new)
        t = omega_loops_contiguous(self.X, self.seq, new)
        if t is not None:
            raise MoveError(f"contiguity step fails at {t}")
        self.seq = new
        self.steps.append(("contiguity", tuple(new)))

    def lower(self, t):
        """Replace seq[t] = v̄ by v (drop its trailing repeated basepoint)."""
        vb = self.seq[t]
        if len(vb) < 2 or vb[-1] != vb[-2]:
            raise MoveError("loop is not a trivial extension")
        self.move("insert", t, vb[:-1])
        self.move("delete", t + 1, vb)

    def dedupe(self, t):
        if self.seq[t] == self.seq[t + 1]:
            self.move("delete", t + 1, self.seq[t + 1])


def phi_product_certificate(f: FaceSphere, g: FaceSphere) -> OmegaCertificate:
    """Edge-group steps in ΩX from Φ(f·g) to Φ(f)·Φ(g).

    1. Slide the g rows from ``x0^m·l`` to ``l·x0^m`` through the maps
       ``l -> l∘α_i^(m+1)``, one contiguity of ΩX loops per i.
    2. Open a valley of constant loops between the f block and the g block.
    3. Lower each block to its own width, peeling one trailing x0 per pass.
    """
    X = f.X
    x0 = X.basepoint
    m, n, r, s = f.m, f.n, g.m, g.n
    P = m + r + 1
    start = phi(fs_product(f, g))
    rec = _Recorder(X, start)
    # positions: ramp 0..P is indices 0..P; rows of f·g 1..n+s at P+1..P+n+s
    g_first = P + 1 + n + 1  # row n+2 of the product, first interior g row
    g_rows = range(g_first, g_first + s - 1)
    for i in range(1, r + 1):
        new = list(rec.seq)
        for t in g_rows:
            grow = g.rows[t - g_first + 1]
            new[t] = extend(grow, (i,) * (m + 1))
        rec.replace(new)
    # rows n and n+1 of the product are both x0^P, at P+n and P+n+1
    mid = P + n
    assert rec.seq[mid] == rec.seq[mid + 1] == (x0,) * (P + 1)
    for q in range(P - 1, -1, -1):
        # ..., x0^(q+1), x0^(q+1), ... -> ..., x0^(q+1), x0^q, x0^(q+1), ...
        rec.move("insert", mid + 1, (x0,) * (q + 1))
        if q > 0:
            rec.move("insert", mid + 2, (x0,) * (q + 1))
        mid += 1
    # now: ramp(0..P) f-block ramp(P..0) ramp(1..P) g-block ramp(P..0)
    _lower_half(rec, P, P + n, r + 1, x0)
    # locate the g half: it starts right after the first return to x0^0
    z = rec.seq.index((x0,), 1)
    g_lo = z + P
    g_hi = g_lo + s
    _lower_half(rec, g_lo, g_hi, m + 1, x0)
    target = omega_product(phi(f), phi(g))
    if tuple(rec.seq) != target:
        raise AssertionError("certificate does not end at Φ(f)·Φ(g)")
    return OmegaCertificate(tuple(start), rec.steps)


def _lower_half(rec: _Recorder, lo: int, hi: int, times: int, x0):
    """Lower ``seq[lo..hi]`` (ramp tops at both ends) ``times`` times."""
    for _ in range(times):
        for t in range(lo + 1, hi):
            rec.lower(t)
        rec.lower(lo)
        rec.dedupe(lo - 1)
        lo -= 1
        hi -= 1
        rec.lower(hi)
        rec.dedupe(hi)


def phi_extension_certificate(f: FaceSphere, r: int, s: int) -> OmegaCertificate:
    """Edge-group steps from Φ of the (r, s) trivial extension of f back to Φ(f)."""
    X = f.X
    x0 = X.basepoint
    fb = fs_trivial_extend(f, r, s)
    start = phi(fb)
    rec = _Recorder(X, start)
    top = f.m + r
    # extra constant rows sit just before the right ramp: drop them
    for _ in range(s):
        rec.dedupe(top + f.n)
    _lower_half(rec, top, top + f.n, r, x0)
    if tuple(rec.seq) != phi(f):
        raise AssertionError("certificate does not end at Φ(f)")
    return OmegaCertificate(tuple(start), rec.steps)


def phi_contiguous(f: FaceSphere, g: FaceSphere) -> bool:
    """Contiguous face spheres have contiguous Φ-images."""
    return omega_loops_contiguous(f.X, phi(f), phi(g)) is None


# -- the degree oracle -------------------------------------------------------

def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign


def sphere_chain(f: FaceSphere) -> dict[tuple[int, int, int], int]:
    """The 2-chain in X obtained by cutting every unit square along a diagonal."""
    chain: dict = {}
    for j in range(f.n):
        for i in range(f.m):
            a, b, c, d = f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1)
            for tri in ((a, b, c), (a, c, d)):
                if len(set(tri)) < 3:
                    continue
                key = tuple(sorted(tri))
                chain[key] = chain.get(key, 0) + _perm_sign(tri)
    return {k: v for k, v in chain.items() if v}


def chain_boundary(chain: dict) -> dict:
    out: dict = {}
    for (a, b, c), v in chain.items():
        for face, sg in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            out[face] = out.get(face, 0) + sg * v
    return {k: v for k, v in out.items() if v}


def cocycle_basis(X: SimplicialComplex) -> tuple[list[tuple], list[list[int]]]:
    """Integer basis of 2-cocycles of X (kernel of the coboundary into 3-cochains)."""
    tris = X.simplices(2)
    tets = X.simplices(3)
    if not tets:
        return tris, [[1 if i == j else 0 for j in range(len(tris))] for i in range(len(tris))]
    pos = {t: i for i, t in enumerate(tris)}
    A = []
    for tet in tets:
        row = [0] * len(tris)
        for k in range(4):
            row[pos[tet[:k] + tet[k + 1:]]] += (-1) ** k
        A.append(row)
    snf = smith_normal_form(A)
    rank = len(snf.diagonal)
    basis = [[snf.V[i][c] for i in range(len(tris))] for c in range(rank, len(tris))]
    return tris, basis


def sphere_degree(f: FaceSphere) -> tuple[int, ...]:
    """Pairings of f's 2-cycle with a cocycle basis; all zero means trivial over Q.

    The values are unchanged along contiguity chains and trivial extensions,
    so a nonzero vector certifies that f is not equivalent to a constant.
    """
    chain = sphere_chain(f)
    if chain_boundary(chain):
        raise AssertionError("sphere chain is not a cycle")
    tris, basis = cocycle_basis(f.X)
    vec = [chain.get(t, 0) for t in tris]
    return tuple(sum(a * b for a, b in zip(phi_, vec)) for phi_ in basis)


def random_face_sphere(X: SimplicialComplex, m: int, n: int, rng, tries: int = 1000) -> FaceSphere:
    """Fill the interior cell by cell, each choice keeping its square a simplex.

    Restarts when the boundary row or column cannot be closed up.
    """
    x0 = X.basepoint
    choices = {v: sorted((v,) + X.neighbors(v)) for v in X.vertices}
    for _ in range(tries):
        grid = [[x0] * (m + 1) for _ in range(n + 1)]
        ok = True
        for j in range(1, n + 1):
            for i in range(1, m + 1):
                if i < m and j < n:
                    opts = [w for w in choices[grid[j][i - 1]]
                            if X.is_simplex_mask(mask_of((grid[j - 1][i - 1], grid[j - 1][i],
                                                          grid[j][i - 1], w)))]
                    if not opts:
                        ok = False
                        break
                    grid[j][i] = rng.choice(opts)
                elif not X.is_simplex_mask(mask_of((grid[j - 1][i - 1], grid[j - 1][i],
                                                    grid[j][i - 1], x0))):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return validate_face_sphere(X, grid)
    raise FaceSphereError("could not sample a face sphere")
