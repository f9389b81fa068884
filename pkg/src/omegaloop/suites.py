"""Verification suites behind ``omegaloop verify``.

Each suite appends ``Check`` records. A check is mandatory when a definite
oracle decides it; search-based checks that run out of budget are
``inconclusive`` and only block the exit code when marked mandatory.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field

from . import facegroup as fg
from .complex import CORPUS, SimplicialComplex, SimplicialMap, bundled, random_based_map
from .groups import EdgeGroup, abelian_order, abelianization, tietze_simplify_tracked
from .loopspace import (build_skeleton, chain_to_omega_path, components, enumerate_loops,
                        is_omega_edge_path, normalize_loop_in_omega, omega_map,
                        omega_path_to_chain, omega_simplex_witness, replay_moves,
                        three_simplex_family, translation_certificate, left_translate,
                        sigma_union_extension)
from .paths import (alpha_chain, check_chain, concatenate, contiguity_search,
                    contiguous_neighbors, extend_once, random_loop, reverse,
                    reverse_inverse_chain)
from .stone import chain_complex_of_N, compare_components, simplicial_homology

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Check:
    suite: str
    anchor: str
    status: str
    detail: str = ""
    mandatory: bool = True


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, suite, anchor, ok, detail="", mandatory=True):
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        self.checks.append(Check(suite, anchor, status, detail, mandatory))

    @property
    def exit_code(self) -> int:
        if any(c.status == FAIL for c in self.checks):
            return 1
        if any(c.status == INCONCLUSIVE and c.mandatory for c in self.checks):
            return 2
        return 0

    def to_json(self) -> dict:
        return {"checks": [asdict(c) for c in self.checks],
                "summary": {s: sum(c.status == s for c in self.checks)
                            for s in (PASS, FAIL, INCONCLUSIVE)}}

    def to_text(self) -> str:
        lines = [f"[{c.status:>12}] {c.suite:<11} {c.anchor}" + (f"  ({c.detail})" if c.detail else "")
                 for c in self.checks]
        s = self.to_json()["summary"]
        lines.append(f"{s[PASS]} passed, {s[FAIL]} failed, {s[INCONCLUSIVE]} inconclusive")
        return "\n".join(lines)


@dataclass
class SuiteConfig:
    max_len: int = 4
    max_dim: int = 3
    budget: int = 10**5
    seed: int = 0
    samples: int = 100
    complexes: tuple[str, ...] = CORPUS
    inputs: dict = field(default_factory=dict)  # name -> SimplicialComplex overrides

    def corpus(self):
        if self.inputs:
            return list(self.inputs.items())
        return [(n, bundled(n)) for n in self.complexes]


def _hollow():
    return bundled("k4hollow")


# -- individual suites -------------------------------------------------------

def suite_contiguity(cfg: SuiteConfig, rep: Report):
    rng = random.Random(cfg.seed)
    for name, X in cfg.corpus():
        bad = 0
        for _ in range(cfg.samples):
            l = random_loop(X, rng.randint(1, 5), rng)
            ch = reverse_inverse_chain(l)
            if check_chain(X, ch) is not None or ch[-1] != concatenate(reverse(l), l):
                bad += 1
        rep.add("contiguity", f"reverse-as-inverse chain validates [{name}]", bad == 0,
                f"{cfg.samples} random loops, {bad} bad")
        bad = 0
        for _ in range(max(1, cfg.samples // 5)):
            l = random_loop(X, rng.randint(1, 4), rng)
            m = len(l) - 1
            i, j = sorted(rng.sample(range(m + 1), 2)) if m >= 1 else (0, 0)
            ch = alpha_chain(l, i, j)
            if check_chain(X, ch) is not None:
                bad += 1
        rep.add("contiguity", f"α_i ~ α_j certificates validate [{name}]", bad == 0)
        # word readout is invariant under single contiguities and extensions
        G = EdgeGroup.of_complex(X)
        bad = 0
        for _ in range(max(1, cfg.samples // 5)):
            l = random_loop(X, rng.randint(1, 5), rng)
            w = G.loop_to_word(l)
            nbs = list(contiguous_neighbors(X, l))
            nb = nbs[rng.randrange(len(nbs))]
            if G.loop_to_word(nb) != w and abelian_order(G.presentation, list(w) + [-x for x in reversed(G.loop_to_word(nb))]) != 1:
                bad += 1
            if G.loop_to_word(extend_once(l, rng.randrange(len(l)))) != w:
                bad += 1
        rep.add("contiguity", f"loop words invariant under moves [{name}]", bad == 0)
    X = _hollow()
    r = contiguity_search(X, (0, 1, 2, 0), (0, 3, 3, 0), 10**4)
    rep.add("contiguity", "hollow 3-simplex: length-3 loops contiguity equivalent",
            r.status if not r.found else PASS, f"{r.steps} steps", mandatory=False)
    C4 = bundled("c4")
    r = contiguity_search(C4, (0, 1, 2, 3, 0), (0,) * 5, cfg.budget)
    rep.add("contiguity", "C4: winding-1 loop not contiguous to constant at length 4",
            r.status == "exhausted", f"{r.status}, {r.explored} loops explored")


def suite_omega(cfg: SuiteConfig, rep: Report):
    X = _hollow()
    l1, l2, l3 = (0, 1, 2, 0), (0, 1, 1, 0), (0, 1, 3, 0)
    pair_ok = all(omega_simplex_witness(X, p) is None for p in ((l1, l2), (l1, l3), (l2, l3)))
    w = omega_simplex_witness(X, (l1, l2, l3))
    rep.add("omega", "hollow 3-simplex: 3-clique that is not a simplex",
            pair_ok and w == ("columns", (2, 3)), f"witness {w}")
    S = build_skeleton(X, 3, 3)
    rep.add("omega", "hollow 3-simplex ΩX(3) has 22 vertices", S.n_vertices == 22)
    bad = 0
    for dim in range(2, 4):
        for s in S.simplices(dim):
            for t in range(len(s)):
                if omega_simplex_witness(X, [S.loops[v] for v in s[:t] + s[t + 1:]]) is not None:
                    bad += 1
    rep.add("omega", "face closure of stored simplices", bad == 0)
    rng = random.Random(cfg.seed + 1)
    for name, Y in cfg.corpus():
        loops = {m: enumerate_loops(Y, m, exact=True) for m in range(1, 5)}
        bad = 0
        for _ in range(cfg.samples):
            kind = rng.choice("abcd")
            try:
                if kind in "ac":
                    m = rng.randint(1, 4)
                    l = rng.choice(loops[m])
                    nbs = list(contiguous_neighbors(Y, l))
                    lp = nbs[rng.randrange(len(nbs))]
                    args = (l, lp) if kind == "a" else (l, lp, rng.randrange(m))
                elif kind == "b":
                    m = rng.randint(2, 4)
                    l = rng.choice(loops[m])
                    downs = [nb[:-1] for nb in contiguous_neighbors(Y, l) if nb[m - 1] == Y.basepoint]
                    if not downs:
                        continue
                    args = (l, rng.choice(downs))
                else:
                    m, n = rng.randint(1, 3), rng.randint(2, 3)
                    l1 = rng.choice(loops[m])
                    l1p = rng.choice(list(contiguous_neighbors(Y, l1)))
                    l2 = rng.choice(loops[n])
                    cands = list(contiguous_neighbors(Y, l2))
                    if rng.random() < 0.5:
                        cands = [nb[:-1] for nb in cands if nb[n - 1] == Y.basepoint] or cands
                    args = (l1, l1p, l2, rng.choice(cands))
                three_simplex_family(Y, kind, *args)
            except AssertionError:
                bad += 1
        rep.add("omega", f"3-simplex extension lemma (a)-(d) emissions [{name}]", bad == 0,
                f"{cfg.samples} random instances")
    # σ ∪ σ̄ on every stored 2-simplex of the length-3 stratum
    bad = 0
    for s in S.stratum_simplices(3):
        try:
            sigma_union_extension(X, [S.loops[v] for v in s])
        except AssertionError:
            bad += 1
    rep.add("omega", "σ ∪ σ̄ is a simplex for stored equal-length simplices", bad == 0)
    # normalization
    S2 = build_skeleton(X, 3, 1)
    adj = S2.adjacency()
    bad = 0
    for _ in range(cfg.samples):
        walk = [S2.basepoint]
        for _ in range(rng.randint(1, 8)):
            walk.append(rng.choice(sorted(adj[walk[-1]])))
        back = _bfs_path(adj, walk[-1], S2.basepoint)
        gamma = [S2.loops[v] for v in walk + back[1:]]
        nf = normalize_loop_in_omega(X, gamma, S2.k)
        if replay_moves(X, gamma, nf.moves) != nf.loop or any(len(l) - 1 != nf.M for l in nf.middle):
            bad += 1
        if normalize_loop_in_omega(X, nf.loop).loop != nf.loop:
            bad += 1
    rep.add("omega", "normalization move logs replay, output in ΩX[M], idempotent", bad == 0)
    # left/right translation
    cert = translation_certificate(S, 2, 0)
    rep.add("omega", "L ~ R translation certificate on ΩX[2]", cert.valid and cert.length == 3)
    # functoriality
    _functor_checks(cfg, rep, rng)
    # paths in ΩX <-> contiguity chains in X
    bad = 0
    for _ in range(max(1, cfg.samples // 5)):
        a, b = rng.randrange(S2.n_vertices), rng.randrange(S2.n_vertices)
        p = _bfs_path(adj, a, b)
        try:
            omega_path_to_chain(X, [S2.loops[v] for v in p])
        except AssertionError:
            bad += 1
        la, lb = S2.loops[a], S2.loops[b]
        M = max(len(la), len(lb)) - 1
        r = contiguity_search(X, la + (0,) * (M + 1 - len(la)), lb + (0,) * (M + 1 - len(lb)), 5000)
        if r.found and is_omega_edge_path(X, chain_to_omega_path(la, lb, r.chain)) is not None:
            bad += 1
    rep.add("omega", "ΩX edge paths <-> contiguity chains in X", bad == 0)


def _functor_checks(cfg, rep, rng):
    names = ["c4", "k4hollow", "delta3", "c3", "torus7"]
    cx = {n: bundled(n) for n in names}
    skel = {n: build_skeleton(cx[n], 3, 2) for n in names}
    bad = 0
    for n in names:
        ident = omega_map(SimplicialMap.identity(cx[n]), skel[n])
        if ident.images != skel[n].loops:
            bad += 1
    rep.add("omega", "Ω(id) = id", bad == 0)
    bad = 0
    pairs = 10
    for _ in range(pairs):
        a, b, c = (rng.choice(names) for _ in range(3))
        f = random_based_map(cx[a], cx[b], rng)
        g = random_based_map(cx[b], cx[c], rng)
        gf = f.compose(g)
        Of = omega_map(f, skel[a])
        Og = omega_map(g, skel[b])
        Ogf = omega_map(gf, skel[a])
        comp = [Og.images[skel[b].index[l]] for l in Of.images]
        if comp != Ogf.images:
            bad += 1
        for dim in (1, 2):
            for s in skel[a].simplices(dim):
                if Ogf.image_of(s) != frozenset(comp[v] for v in s):
                    bad += 1
                    break
    rep.add("omega", "Ω(g∘f) = Ωg∘Ωf on vertices and simplices", bad == 0, f"{pairs} random pairs")
    Y = bundled("delta3")
    X = _hollow()
    f = SimplicialMap.from_labels(X, Y, {})
    try:
        omega_map(f, build_skeleton(X, 3, 3))
        ok = True
    except AssertionError:
        ok = False
    rep.add("omega", "hollow 3-simplex -> full 3-simplex: Ωf simplicial on ΩX(3)", ok)


def _bfs_path(adj, a, b):
    from collections import deque
    par = {a: None}
    q = deque([a])
    while q:
        u = q.popleft()
        if u == b:
            break
        for w in sorted(adj[u]):
            if w not in par:
                par[w] = u
                q.append(w)
    p = [b]
    while par[p[-1]] is not None:
        p.append(par[p[-1]])
    return p[::-1]


def suite_components(cfg: SuiteConfig, rep: Report):
    targets = cfg.inputs.items() if cfg.inputs else [(n, bundled(n)) for n in ("c3", "c4", "k4hollow")]
    for name, X in targets:
        S = build_skeleton(X, cfg.max_len, 1)
        comps = components(S)
        G = EdgeGroup.of_complex(X)
        T = tietze_simplify_tracked(G.presentation)
        words = [T.rewrite(G.loop_to_word(S.loops[r])) for r in comps.representatives]
        separated = len(set(words)) == len(words)
        detail = f"{comps.count} components at k={cfg.max_len}"
        rep.add("components", f"component representatives separated by words [{name}]", separated, detail)
        if not T.presentation.relators:
            # free group: reduced words decide equality, so count loop classes directly
            classes = {T.rewrite(G.loop_to_word(l)) for l in S.loops}
            rep.add("components", f"components = loop classes of length <= k [{name}]",
                    len(classes) == comps.count, f"{len(classes)} classes, {comps.count} components")
        if name == "c4":
            expect = 2 * (cfg.max_len // 4) + 1
            rep.add("components", "C4 component count 2⌊k/4⌋+1", comps.count == expect,
                    f"{comps.count} vs {expect}")


def suite_facegroup(cfg: SuiteConfig, rep: Report):
    rng = random.Random(cfg.seed + 2)
    X = _hollow()
    C4 = bundled("c4")
    try:
        fg.validate_face_sphere(C4, [(0, 0, 0), (0, 2, 0), (0, 0, 0)])
        ok = False
    except fg.FaceSphereError as e:
        ok = e.witness is not None
    rep.add("facegroup", "C4: invalid sphere reports a witness square", ok)
    f = fg.validate_face_sphere(X, [(0, 0, 0, 0), (0, 1, 1, 0), (0, 2, 3, 0), (0, 0, 0, 0)])
    rep.add("facegroup", "degree-1 sphere on the hollow 3-simplex", any(fg.sphere_degree(f)),
            f"pairing {fg.sphere_degree(f)}")
    for name, Y in cfg.corpus():
        bad = 0
        for _ in range(max(1, cfg.samples // 5)):
            a = fg.random_face_sphere(Y, rng.randint(1, 3), rng.randint(1, 3), rng)
            b = fg.random_face_sphere(Y, rng.randint(1, 3), rng.randint(1, 3), rng)
            p = fg.fs_product(a, b)
            if p.dims != (a.m + b.m + 1, a.n + b.n + 1):
                bad += 1
            if fg.omega_loop_to_fs(Y, fg.fs_to_omega_loop(a)) != a:
                bad += 1
            if fg.transpose(fg.transpose(a)) != a:
                bad += 1
            if a.m >= 1:
                i = rng.randrange(a.m)
                if not fg.fs_contiguous(fg.fs_repeat(a, (i,)), fg.fs_repeat(a, (i + 1,))):
                    bad += 1
            if fg.sphere_degree(a) != fg.sphere_degree(fg.fs_trivial_extend(a, 1, 2)):
                bad += 1
        rep.add("facegroup", f"product dims, round trip, repeat contiguity, degree invariance [{name}]",
                bad == 0)
    r = fg.fs_equivalent(f, fg.fs_repeat(f, (), (1,)), budget=cfg.budget)
    rep.add("facegroup", "sphere ≈ its row repetition", r.status if not r.found else PASS,
            f"{r.steps} steps", mandatory=False)
    r = fg.fs_equivalent(f, fg.constant_sphere(X, 3, 3), budget=min(cfg.budget, 2000))
    deg = fg.sphere_degree(f)
    rep.add("facegroup", "degree-1 sphere vs constant: search finds nothing, degree certifies",
            (not r.found) and any(deg), f"search {r.status}; pairing {deg}")


def suite_phi(cfg: SuiteConfig, rep: Report):
    rng = random.Random(cfg.seed + 3)
    for name, Y in cfg.corpus():
        bad = inconclusive = 0
        n = 20
        for _ in range(n):
            a = fg.random_face_sphere(Y, rng.randint(1, 3), rng.randint(1, 3), rng)
            b = fg.random_face_sphere(Y, rng.randint(1, 3), rng.randint(1, 3), rng)
            try:
                cert = fg.phi_product_certificate(a, b)
                if len(cert) > cfg.budget:
                    inconclusive += 1
                elif tuple(cert.end(Y)) != fg.omega_product(fg.phi(a), fg.phi(b)):
                    bad += 1
            except AssertionError:
                bad += 1
            try:
                e = fg.phi_extension_certificate(a, rng.randint(0, 2), rng.randint(0, 2))
                if tuple(e.end(Y)) != fg.phi(a):
                    bad += 1
            except AssertionError:
                bad += 1
        status = FAIL if bad else (INCONCLUSIVE if inconclusive else PASS)
        rep.add("phi", f"Φ(f·g) ≈ Φ(f)·Φ(g) certificates [{name}]", status,
                f"{n} pairs, inconclusive rate {inconclusive}/{n}",
                mandatory=(name == "k4hollow"))
    res = pi2_signal()
    rep.add("phi", "π₂ signal: Φ(degree-1 sphere) has infinite order in E(ΩX(k))ᵃᵇ",
            res["nontrivial"] and res["rank"] >= 1, f"k={res['k']}, rank {res['rank']}")
    # contiguous spheres have contiguous Φ-images
    X = _hollow()
    bad = 0
    for _ in range(max(1, cfg.samples // 5)):
        a = fg.random_face_sphere(X, 2, 3, rng)
        nbs = list(contiguous_neighbors(fg._Stratum(X), a.rows))
        b = fg.FaceSphere(X, nbs[rng.randrange(len(nbs))])
        if not fg.phi_contiguous(a, b):
            bad += 1
    rep.add("phi", "contiguous spheres have contiguous Φ-images", bad == 0)
    # surjectivity mechanism: normalize, then rebuild via Φ
    S = build_skeleton(X, 3, 1)
    adj = S.adjacency()
    bad = 0
    for _ in range(max(1, cfg.samples // 5)):
        walk = [S.basepoint]
        for _ in range(rng.randint(1, 8)):
            walk.append(rng.choice(sorted(adj[walk[-1]])))
        back = _bfs_path(adj, walk[-1], S.basepoint)
        gamma = [S.loops[v] for v in walk + back[1:]]
        nf = normalize_loop_in_omega(X, gamma)
        M = nf.M
        c = (0,) * (M + 1)
        sphere = fg.omega_loop_to_fs(X, [c] + nf.middle + [c]) if M >= 1 else None
        if sphere is not None and fg.phi(sphere) != tuple(nf.loop) and \
                fg.phi(sphere) != tuple(nf.loop[:M + 1] + nf.loop[M:]):
            bad += 1
    rep.add("phi", "normal forms are Φ-images of face spheres", bad == 0)


def pi2_signal(max_k: int = 4) -> dict:
    """Smallest k at which Φ of the degree-1 sphere is nontrivial in E(ΩX(k))ᵃᵇ."""
    X = _hollow()
    f = fg.validate_face_sphere(X, [(0, 0, 0, 0), (0, 1, 1, 0), (0, 2, 3, 0), (0, 0, 0, 0)])
    loop = fg.phi(f)
    for k in range(f.m, max_k + 1):
        S = build_skeleton(X, k, 2)
        G = S.edge_group()
        w = G.loop_to_word([S.index[l] for l in loop])
        ab = abelianization(G.presentation)
        order = abelian_order(G.presentation, w)
        if order != 1:
            return {"k": k, "rank": ab.rank, "torsion": list(ab.torsion),
                    "order": order, "nontrivial": True, "degree": list(fg.sphere_degree(f))}
    return {"k": None, "rank": ab.rank, "nontrivial": False}


def suite_stone(cfg: SuiteConfig, rep: Report):
    for name in ("c3", "c4", "k4hollow"):
        X = bundled(name)
        for k in range(1, min(cfg.max_len, 4) + 1):
            N = chain_complex_of_N(X, k, 3)
            S = build_skeleton(X, k, 3)
            hN, hS = N.homology(2), simplicial_homology(S, 2)
            rep.add("stone", f"β_i, torsion of ΩX({k}) = N({k}) for i <= 2 [{name}]", hN.agrees(hS, 2),
                    f"Ω {hS.betti} {hS.torsion}; N {hN.betti} {hN.torsion}")
            cc = compare_components(S, N)
            rep.add("stone", f"vertex map induces a bijection on components, k={k} [{name}]", cc.bijective)
    for name, X in cfg.corpus():
        h = simplicial_homology(X, 1)
        ab = EdgeGroup.of_complex(X).abelianization()
        rep.add("stone", f"H₁ = abelianized edge group [{name}]",
                h.betti[1] == ab.rank and h.torsion[1] == list(ab.torsion),
                f"rank {ab.rank}, torsion {list(ab.torsion)}")


SUITES = {
    "contiguity": suite_contiguity,
    "omega": suite_omega,
    "components": suite_components,
    "facegroup": suite_facegroup,
    "phi": suite_phi,
    "stone": suite_stone,
}


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    rep = Report()
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        SUITES[n](cfg, rep)
    return rep
