"""Finitely presented groups: edge groups, loop words, homomorphisms, Tietze moves.

Words are tuples of nonzero ints; letter ``+g`` / ``-g`` is generator ``g-1``
or its inverse (generators are numbered from 1 inside words).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import prod
from typing import Hashable, Iterable, Sequence

from .complex import SimplicialComplex, SimplicialMap
from .paths import PathError, reverse
from .smith import invariant_factors

Word = tuple


class GroupError(ValueError):
    pass


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def exponent_sums(word: Iterable[int], n: int) -> dict[int, int]:
    row: dict[int, int] = {}
    for x in word:
        g = abs(x) - 1
        if not (0 <= g < n):
            raise GroupError(f"letter {x} out of range for {n} generators")
        row[g] = row.get(g, 0) + (1 if x > 0 else -1)
    return {g: v for g, v in row.items() if v}


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        n = len(self.generators)
        rels = []
        for r in self.relators:
            r = free_reduce(r)
            for x in r:
                if x == 0 or abs(x) > n:
                    raise GroupError(f"relator letter {x} out of range")
            rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def relation_rows(self) -> list[dict[int, int]]:
        return [exponent_sums(r, self.n_generators) for r in self.relators]

    def to_json(self) -> dict:
        return {"generators": list(self.generators),
                "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        return cls(tuple(data["generators"]), tuple(tuple(r) for r in data["relators"]))

    def format_word(self, word: Sequence[int]) -> str:
        if not word:
            return "1"
        return " ".join(self.generators[abs(x) - 1] + ("" if x > 0 else "^-1") for x in word)


# -- abelian data ------------------------------------------------------------

def abelianization(P: Presentation) -> AbelianInvariants:
    diag = invariant_factors(P.relation_rows())
    return AbelianInvariants(P.n_generators - len(diag), tuple(d for d in diag if d > 1))


def abelian_order(P: Presentation, word: Sequence[int]) -> int:
    """Order of the image of ``word`` in the abelianization; 0 means infinite.

    If L is the relation lattice and c the word's exponent vector, the order is
    the index [L + Zc : L], read off from ranks and invariant-factor products.
    """
    rows = P.relation_rows()
    c = exponent_sums(word, P.n_generators)
    if not c:
        return 1
    d0 = invariant_factors(rows)
    d1 = invariant_factors(rows + [c])
    if len(d1) > len(d0):
        return 0
    return prod(d0) // prod(d1)


def abelian_trivial(P: Presentation, word: Sequence[int]) -> bool:
    return abelian_order(P, word) == 1


# -- homomorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    """Generator-wise images; ``images[g]`` is a word in the target."""

    source: Presentation
    target: Presentation
    images: tuple[Word, ...]

    def apply(self, word: Sequence[int]) -> Word:
        out: list[int] = []
        for x in word:
            w = self.images[abs(x) - 1]
            out.extend(w if x > 0 else inverse(w))
        return free_reduce(out)

    def __call__(self, word):
        return self.apply(word)

    def compose(self, after: "Homomorphism") -> "Homomorphism":
        return Homomorphism(self.source, after.target, tuple(after.apply(w) for w in self.images))

    def relators_hold_abelian(self) -> bool:
        """Every source relator maps to a word trivial in the target abelianization."""
        return all(abelian_trivial(self.target, self.apply(r)) for r in self.source.relators)

    def abelian_matrix(self) -> list[dict[int, int]]:
        return [exponent_sums(w, self.target.n_generators) for w in self.images]


# -- edge groups -------------------------------------------------------------

class EdgeGroup:
    """The spanning-tree presentation of an edge group.

    Works from raw data (vertex list, edges, triangles) so it serves both a
    complex X and a built skeleton of its loop space. Vertices may be any
    hashable objects; edges are unordered pairs.
    """

    def __init__(self, vertices: Sequence[Hashable], edges: Iterable[tuple],
                 triangles: Iterable[tuple], basepoint: Hashable, names=None):
        order = {v: i for i, v in enumerate(vertices)}
        if basepoint not in order:
            raise GroupError("basepoint is not a vertex")
        adj: dict[Hashable, list] = {v: [] for v in vertices}
        es = set()
        for a, b in edges:
            if a == b:
                continue
            a, b = sorted((a, b), key=order.__getitem__)
            if (a, b) not in es:
                es.add((a, b))
                adj[a].append(b)
                adj[b].append(a)
        if not adj[basepoint] and len(vertices) > 1:
            raise GroupError("basepoint is isolated")
        # BFS tree, lexicographic by vertex order
        parent = {basepoint: None}
        queue = deque([basepoint])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u], key=order.__getitem__):
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        self.basepoint = basepoint
        self.parent = parent
        self.order = order
        comp = sorted(parent, key=order.__getitem__)
        self.component = comp
        gens = sorted(((a, b) for a, b in es if a in parent), key=lambda e: (order[e[0]], order[e[1]]))
        self.edges = gens
        self.edge_index = {e: i for i, e in enumerate(gens)}
        self.tree = {tuple(sorted((v, p), key=order.__getitem__)) for v, p in parent.items() if p is not None}
        name = names or (lambda v: str(v))
        self.generator_names = tuple(f"g[{name(a)},{name(b)}]" for a, b in gens)
        rels: list[Word] = []
        for e in gens:
            if e in self.tree:
                rels.append((self.edge_index[e] + 1,))
        for tri in triangles:
            if tri[0] not in parent:
                continue
            a, b, c = sorted(tri, key=order.__getitem__)
            rels.append(free_reduce((self._letter(a, b), self._letter(b, c), self._letter(c, a))))
        self.presentation = Presentation(self.generator_names, tuple(rels))

    @classmethod
    def of_complex(cls, X: SimplicialComplex) -> "EdgeGroup":
        return cls(list(X.vertices), X.simplices(1), X.simplices(2), X.basepoint, names=X.label)

    def _letter(self, a, b) -> int:
        if self.order[a] < self.order[b]:
            return self.edge_index[(a, b)] + 1
        return -(self.edge_index[(b, a)] + 1)

    def letter(self, a, b) -> int | None:
        """Letter for traversing a -> b, or None for a tree edge or a repeat."""
        if a == b:
            return None
        e = (a, b) if self.order[a] < self.order[b] else (b, a)
        if e not in self.edge_index:
            raise GroupError(f"{a!r}-{b!r} is not an edge of the basepoint component")
        if e in self.tree:
            return None
        return self._letter(a, b)

    def loop_to_word(self, loop: Sequence[Hashable]) -> Word:
        if not loop:
            raise GroupError("empty loop")
        for v in (loop[0], loop[-1]):
            if v not in self.parent:
                raise GroupError(f"{v!r} is not in the basepoint component")
        out = []
        for a, b in zip(loop, loop[1:]):
            x = self.letter(a, b)
            if x is not None:
                out.append(x)
        return free_reduce(out)

    def tree_path(self, v) -> tuple:
        """Path in the spanning tree from the basepoint to v."""
        if v not in self.parent:
            raise GroupError(f"{v!r} is not in the basepoint component")
        p = [v]
        while self.parent[p[-1]] is not None:
            p.append(self.parent[p[-1]])
        return tuple(reversed(p))

    def generator_loop(self, g: int) -> tuple:
        """A based loop whose word is generator g (0-based)."""
        a, b = self.edges[g]
        return self.tree_path(a) + reverse(self.tree_path(b))

    def abelianization(self) -> AbelianInvariants:
        return abelianization(self.presentation)


def edge_group_presentation(X: SimplicialComplex) -> Presentation:
    return EdgeGroup.of_complex(X).presentation


def loop_to_word(G: EdgeGroup, loop) -> Word:
    return G.loop_to_word(loop)


def conjugate_loop(loop: Sequence, eta: Sequence) -> tuple:
    """``reverse(eta) · loop · eta`` for a path eta from loop's basepoint to y0.

    Joined at the shared endpoints without doubling, so the result is an edge
    loop at y0 equivalent to the product form.
    """
    if eta[0] != loop[0]:
        raise PathError("eta does not start at the loop basepoint")
    return tuple(reverse(eta)) + tuple(loop[1:]) + tuple(eta[1:])


def change_of_basepoint(GX: EdgeGroup, GY: EdgeGroup, eta: Sequence) -> Homomorphism:
    """Word-level map E(X, x0) -> E(X, y0), ``l -> reverse(eta)·l·eta``.

    ``GX`` and ``GY`` are edge groups of the same complex based at eta's two
    endpoints.
    """
    eta = tuple(eta)
    if eta[0] != GX.basepoint or eta[-1] != GY.basepoint:
        raise PathError("eta endpoints do not match the basepoints")
    imgs = tuple(GY.loop_to_word(conjugate_loop(GX.generator_loop(g), eta))
                 for g in range(len(GX.edges)))
    return Homomorphism(GX.presentation, GY.presentation, imgs)


def induced_hom(f: SimplicialMap, GX: EdgeGroup, GY: EdgeGroup,
                allow_unbased: bool = False) -> Homomorphism:
    """``f_*`` on generators. An unbased f is corrected by the tree path from
    the target basepoint to f(x0) when ``allow_unbased`` is set."""
    fx0 = f(GX.basepoint)
    if fx0 != GY.basepoint and not allow_unbased:
        raise GroupError("map is not based")
    eta = reverse(GY.tree_path(fx0))  # f(x0) -> y0
    imgs = []
    for g in range(len(GX.edges)):
        img = tuple(f(v) for v in GX.generator_loop(g))
        if fx0 != GY.basepoint:
            img = conjugate_loop(img, eta)
        imgs.append(GY.loop_to_word(img))
    return Homomorphism(GX.presentation, GY.presentation, tuple(imgs))


# -- Tietze ------------------------------------------------------------------

@dataclass
class TietzeResult:
    presentation: Presentation
    substitution: tuple[Word, ...]  # original generator -> word in the new generators
    eliminated: list[int] = field(default_factory=list)

    def rewrite(self, word: Sequence[int]) -> Word:
        out = []
        for x in word:
            w = self.substitution[abs(x) - 1]
            out.extend(w if x > 0 else inverse(w))
        return free_reduce(out)


def tietze_simplify_tracked(P: Presentation, effort: int = 10**5) -> TietzeResult:
    """Deterministic generator elimination.

    Repeatedly picks the shortest relator in which some generator occurs
    exactly once, solves it for that generator and substitutes everywhere.
    Empty and duplicate (up to cyclic rotation and inversion) relators are
    dropped. ``effort`` bounds the total number of letters rewritten.
    """
    n = P.n_generators
    subst: list[Word] = [(g + 1,) for g in range(n)]
    alive = [True] * n
    rels = [cyclic_reduce(r) for r in P.relators]
    eliminated = []
    work = 0

    def canon(r):
        if not r:
            return ()
        variants = []
        for w in (r, inverse(r)):
            variants.extend(w[i:] + w[:i] for i in range(len(w)))
        return min(variants)

    while work < effort:
        seen = set()
        uniq = []
        for r in rels:
            c = canon(r)
            if c and c not in seen:
                seen.add(c)
                uniq.append(r)
        rels = uniq
        choice = None
        for ri in sorted(range(len(rels)), key=lambda i: (len(rels[i]), rels[i])):
            r = rels[ri]
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            single = [g for g, c in counts.items() if c == 1]
            if single:
                choice = (ri, min(single))
                break
        if choice is None:
            break
        ri, g = choice
        r = rels.pop(ri)
        k = next(i for i, x in enumerate(r) if abs(x) == g)
        # r = u g^e v = 1  =>  g^e = u^-1 v^-1
        u, v = r[:k], r[k + 1:]
        val = free_reduce(inverse(u) + inverse(v))
        if r[k] < 0:
            val = inverse(val)

        def sub(w):
            out = []
            for x in w:
                if abs(x) == g:
                    out.extend(val if x > 0 else inverse(val))
                else:
                    out.append(x)
            return free_reduce(out)

        rels = [cyclic_reduce(sub(w)) for w in rels]
        subst = [sub(w) for w in subst]
        work += sum(len(w) for w in rels) + 1
        alive[g - 1] = False
        eliminated.append(g - 1)

    keep = [i for i in range(n) if alive[i]]
    renum = {i + 1: k + 1 for k, i in enumerate(keep)}

    def ren(w):
        return tuple(renum[x] if x > 0 else -renum[-x] for x in w)

    Q = Presentation(tuple(P.generators[i] for i in keep), tuple(ren(r) for r in rels if r))
    return TietzeResult(Q, tuple(ren(w) for w in subst), eliminated)


def tietze_simplify(P: Presentation, effort: int = 10**5) -> Presentation:
    return tietze_simplify_tracked(P, effort).presentation
