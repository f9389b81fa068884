"""Finite abstract simplicial complexes stored by facets, plus simplicial maps.

Vertices are dense integer ids ``0..V-1`` with unique display labels. Simplex
membership is answered with bitmasks: a vertex set is a simplex iff its mask is
contained in the mask of some facet.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence


class ComplexError(ValueError):
    """Malformed complex input or an invalid query."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _maximalize(sets: Iterable[frozenset]) -> list[frozenset]:
    uniq = sorted(set(sets), key=lambda s: (-len(s), sorted(s)))
    kept: list[frozenset] = []
    for s in uniq:
        if not any(s <= t for t in kept):
            kept.append(s)
    return sorted(kept, key=lambda s: (len(s), sorted(s)))


class SimplicialComplex:
    """Immutable finite simplicial complex with a basepoint.

    ``facets`` are stored maximal and sorted; every query is pure, so one
    instance may be shared freely between workers.
    """

    def __init__(self, labels: Sequence[str], facets: Iterable[Iterable[int]], basepoint: int = 0):
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise ComplexError("vertex labels must be unique")
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        n = len(self.labels)
        fs = []
        for f in facets:
            f = frozenset(f)
            if not f:
                raise ComplexError("empty facet")
            if any(not (0 <= v < n) for v in f):
                raise ComplexError(f"facet {sorted(f)} has a vertex outside 0..{n - 1}")
            fs.append(f)
        covered = set().union(*fs) if fs else set()
        # isolated vertices still count as 0-simplices
        fs.extend(frozenset([v]) for v in range(n) if v not in covered)
        self.facets = tuple(_maximalize(fs))
        if not (0 <= basepoint < n):
            raise ComplexError("basepoint is not a vertex")
        self.basepoint = basepoint
        self.facet_masks = tuple(mask_of(f) for f in self.facets)
        by_vertex: list[list[int]] = [[] for _ in range(n)]
        for fm in self.facet_masks:
            for v in bits(fm):
                by_vertex[v].append(fm)
        self._by_vertex = tuple(tuple(x) for x in by_vertex)
        self._all_mask = (1 << n) - 1
        self.is_simplex_mask = lru_cache(maxsize=None)(self._is_simplex_mask)
        self._neighbors: tuple[tuple[int, ...], ...] | None = None

    # -- basic data -------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(len(self.labels))

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def vid(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise ComplexError(f"unknown vertex label {label!r}") from None

    def label(self, v: int) -> str:
        return self.labels[v]

    # -- simplex queries --------------------------------------------------

    def _is_simplex_mask(self, mask: int) -> bool:
        if mask == 0:
            return False
        low = (mask & -mask).bit_length() - 1
        for fm in self._by_vertex[low]:
            if mask & ~fm == 0:
                return True
        return False

    def is_simplex(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        if m & ~self._all_mask:
            raise ComplexError("vertex not in complex")
        return self.is_simplex_mask(m)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Vertices w != v with {v, w} an edge, ascending."""
        if self._neighbors is None:
            nb = []
            for u in self.vertices:
                m = 0
                for fm in self._by_vertex[u]:
                    m |= fm
                nb.append(tuple(w for w in bits(m) if w != u))
            self._neighbors = tuple(nb)
        return self._neighbors[v]

    def simplices(self, dim: int) -> list[tuple[int, ...]]:
        """All simplices of the given dimension as sorted vertex tuples."""
        out = set()
        for f in self.facets:
            if len(f) > dim:
                out.update(combinations(sorted(f), dim + 1))
        return sorted(out)

    def all_simplices(self) -> list[tuple[int, ...]]:
        out = []
        for d in range(self.dimension + 1):
            out.extend(self.simplices(d))
        return out

    def component_of(self, v: int) -> list[int]:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return sorted(seen)

    def is_connected(self) -> bool:
        return len(self.component_of(self.basepoint)) == self.n_vertices

    def with_basepoint(self, basepoint: int) -> "SimplicialComplex":
        return SimplicialComplex(self.labels, self.facets, basepoint)

    # -- identity / io ----------------------------------------------------

    def _key(self):
        return (self.labels, self.facets, self.basepoint)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"SimplicialComplex(V={self.n_vertices}, facets={len(self.facets)}, "
                f"dim={self.dimension}, basepoint={self.labels[self.basepoint]!r})")

    def to_text(self) -> str:
        lines = [f"basepoint {self.labels[self.basepoint]}"]
        for f in self.facets:
            lines.append(" ".join(self.labels[v] for v in sorted(f)))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.labels),
            "facets": [[self.labels[v] for v in sorted(f)] for f in self.facets],
            "basepoint": self.labels[self.basepoint],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        labels = list(data["vertices"])
        idx = {lab: i for i, lab in enumerate(labels)}
        facets = [[idx[x] for x in f] for f in data["facets"]]
        return cls(labels, facets, idx[data["basepoint"]])

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[str]], basepoint: str) -> "SimplicialComplex":
        """Build from label facets; labels are numbered in order of first appearance."""
        labels: list[str] = []
        idx: dict[str, int] = {}
        id_facets = []
        for f in facets:
            row = []
            for lab in f:
                if lab not in idx:
                    idx[lab] = len(labels)
                    labels.append(lab)
                row.append(idx[lab])
            id_facets.append(row)
        if basepoint not in idx:
            raise ComplexError(f"unknown basepoint label {basepoint!r}")
        return cls(labels, id_facets, idx[basepoint])


def load_complex(text: str) -> SimplicialComplex:
    """Parse the facet-list format.

    One facet per line as whitespace-separated labels, ``#`` comments, and a
    ``basepoint <label>`` header. Without a header the first listed vertex is
    the basepoint.
    """
    facets: list[list[str]] = []
    basepoint = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = [t for t in re.split(r"[\s,]+", line) if t]
        if not toks:
            raise ComplexError(f"line {lineno}: empty facet")
        if toks[0] == "basepoint":
            if len(toks) != 2:
                raise ComplexError(f"line {lineno}: expected 'basepoint <label>'")
            basepoint = toks[1]
            continue
        if len(set(toks)) != len(toks):
            raise ComplexError(f"line {lineno}: duplicate vertex within facet")
        facets.append(toks)
    if not facets:
        raise ComplexError("no facets")
    if basepoint is None:
        basepoint = facets[0][0]
    return SimplicialComplex.from_facets(facets, basepoint)


def read_complex(path) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return SimplicialComplex.from_json(json.loads(text))
    return load_complex(text)


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex map ``source -> target``; ``assignment[v]`` is the image of v."""

    source: SimplicialComplex
    target: SimplicialComplex
    assignment: tuple[int, ...] = field()

    def __post_init__(self):
        if len(self.assignment) != self.source.n_vertices:
            raise ComplexError("vertex assignment must be total on the source")
        if any(not (0 <= w < self.target.n_vertices) for w in self.assignment):
            raise ComplexError("image vertex not in target")

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def image(self, simplex: Iterable[int]) -> frozenset:
        return frozenset(self.assignment[v] for v in simplex)

    @property
    def is_based(self) -> bool:
        return self.assignment[self.source.basepoint] == self.target.basepoint

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """``after ∘ self``."""
        if after.source != self.target:
            raise ComplexError("maps are not composable")
        return SimplicialMap(self.source, after.target,
                             tuple(after.assignment[w] for w in self.assignment))

    @classmethod
    def identity(cls, X: SimplicialComplex) -> "SimplicialMap":
        return cls(X, X, tuple(X.vertices))

    @classmethod
    def constant(cls, X: SimplicialComplex, Y: SimplicialComplex) -> "SimplicialMap":
        return cls(X, Y, (Y.basepoint,) * X.n_vertices)

    @classmethod
    def from_labels(cls, X, Y, mapping: dict[str, str]) -> "SimplicialMap":
        return cls(X, Y, tuple(Y.vid(mapping.get(lab, lab)) for lab in X.labels))


def simplicial_witness(f: SimplicialMap):
    """First facet of the source whose image is not a simplex, else None."""
    for fac in f.source.facets:
        if not f.target.is_simplex_mask(mask_of(f.image(fac))):
            return tuple(sorted(fac))
    return None


def check_simplicial(f: SimplicialMap) -> bool:
    return simplicial_witness(f) is None


def random_based_map(X: SimplicialComplex, Y: SimplicialComplex, rng, tries: int = 200) -> SimplicialMap:
    """A random based simplicial map, built vertex by vertex with rejection.

    Falls back to the constant map if nothing else is found.
    """
    order = [X.basepoint] + [v for v in X.vertices if v != X.basepoint]
    for _ in range(tries):
        a = [None] * X.n_vertices
        a[X.basepoint] = Y.basepoint
        ok = True
        for v in order[1:]:
            opts = []
            for w in Y.vertices:
                a[v] = w
                if all(Y.is_simplex_mask(mask_of(a[u] for u in fac if a[u] is not None))
                       for fac in X.facets if v in fac):
                    opts.append(w)
            if not opts:
                ok = False
                break
            a[v] = rng.choice(opts)
        if ok:
            f = SimplicialMap(X, Y, tuple(a))
            if check_simplicial(f):
                return f
    return SimplicialMap.constant(X, Y)


CORPUS = ("point", "c3", "c4", "delta3", "k4hollow", "rp2", "torus7")


def bundled(name: str) -> SimplicialComplex:
    """One of the bundled test complexes, by short name."""
    from importlib import resources
    if name not in CORPUS:
        raise ComplexError(f"no bundled complex {name!r}; have {', '.join(CORPUS)}")
    text = resources.files("omegaloop").joinpath("data", f"{name}.sc").read_text(encoding="utf-8")
    return load_complex(text)
