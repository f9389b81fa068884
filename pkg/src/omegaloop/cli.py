"""Command line: ``omegaloop <command> [options]``.

Every JSON artifact carries the tool version, the run configuration and the
SHA-256 of the input file, and is written with sorted keys so reruns are
byte-identical.

Exit codes: 0 pass, 1 assertion failure, 2 inconclusive mandatory check,
3 resource cap hit, 4 usage error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from . import facegroup as fg
from .complex import CORPUS, ComplexError, bundled, load_complex
from .groups import EdgeGroup, abelian_order, abelianization, tietze_simplify_tracked
from .loopspace import (OmegaError, ResourceCapError, build_skeleton, component_invariants,
                        components)
from .paths import PathError
from .stone import HomologyError, chain_complex_of_N, simplicial_homology
from .suites import SUITES, SuiteConfig, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    max_len: int = 4
    max_dim: int = 2
    budget: int = 10**5
    seed: int = 0
    workers: int = 1
    out: str | None = None
    format: str = "json"
    extra: dict = field(default_factory=dict)

    def validate(self):
        for name in ("max_len", "budget", "workers"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.max_dim < 0:
            raise UsageError("--max-dim must be nonnegative")


def _load_input(path: str | None):
    """(complex, digest, name); a bare corpus name selects a bundled complex."""
    if path is None:
        raise UsageError("--input is required")
    p = Path(path)
    if not p.exists() and path in CORPUS:
        X = bundled(path)
        return X, hashlib.sha256(X.to_text().encode()).hexdigest(), path
    try:
        data = p.read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    text = data.decode("utf-8")
    if p.suffix == ".json":
        from .complex import SimplicialComplex
        X = SimplicialComplex.from_json(json.loads(text))
    else:
        X = load_complex(text)
    return X, hashlib.sha256(data).hexdigest(), p.stem


def _emit(cfg: RunConfig, result, digest=None, text=None):
    if cfg.format == "text" and text is not None:
        out = text.rstrip("\n") + "\n"
    else:
        art = {"tool": "omegaloop", "version": __version__,
               "config": asdict(cfg), "input_digest": digest, "result": result}
        out = json.dumps(art, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _loop_literal(X, loop):
    return "[" + ",".join(X.label(v) for v in loop) + "]"


# -- commands ----------------------------------------------------------------

def cmd_build(cfg: RunConfig) -> int:
    X, digest, _ = _load_input(cfg.input)
    h = simplicial_homology(X, min(cfg.max_dim, X.dimension))
    res = {"complex": X.to_json(), "n_vertices": X.n_vertices, "n_facets": len(X.facets),
           "dimension": X.dimension, "connected": X.is_connected(), "homology": h.to_json()}
    _emit(cfg, res, digest, text=f"{X!r}\nbetti {h.betti} torsion {h.torsion}")
    return EXIT_PASS


def cmd_omega(cfg: RunConfig) -> int:
    X, digest, _ = _load_input(cfg.input)
    S = build_skeleton(X, cfg.max_len, max(cfg.max_dim, 1))
    comps = components(S)
    res = {"skeleton": S.to_json(), "counts": {str(k): v for k, v in S.counts().items()},
           "components": {"count": comps.count, "sizes": comps.sizes,
                          "representatives": [S.literal(r) for r in comps.representatives],
                          "labels": comps.labels}}
    if S.d >= 2:
        res["component_invariants"] = component_invariants(S)
    txt = [f"ΩX({S.k}) {S.d}-skeleton: {S.counts()}", f"{comps.count} components"]
    txt += [f"  {_loop_literal(X, S.loops[r])}  size {s}" for r, s in zip(comps.representatives, comps.sizes)]
    _emit(cfg, res, digest, text="\n".join(txt))
    return EXIT_PASS


def cmd_edge_group(cfg: RunConfig) -> int:
    X, digest, _ = _load_input(cfg.input)
    G = EdgeGroup.of_complex(X)
    T = tietze_simplify_tracked(G.presentation)
    ab = abelianization(G.presentation)
    res = {"presentation": G.presentation.to_json(), "simplified": T.presentation.to_json(),
           **ab.to_json()}
    P = T.presentation
    txt = (f"< {', '.join(P.generators)} | {', '.join(P.format_word(r) for r in P.relators)} >\n"
           f"abelianization: rank {ab.rank}, torsion {list(ab.torsion)}")
    _emit(cfg, res, digest, text=txt)
    return EXIT_PASS


def _sphere(X, path, flag="--sphere"):
    if not path:
        raise UsageError(f"{flag} is required")
    try:
        grid = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return fg.face_sphere_from_labels(X, grid)


def cmd_face_group(cfg: RunConfig) -> int:
    X, digest, _ = _load_input(cfg.input)
    action = cfg.extra.get("action")
    f = _sphere(X, cfg.extra.get("sphere"))
    if action == "validate":
        res = {"valid": True, "dims": list(f.dims), "degree": list(fg.sphere_degree(f))}
        _emit(cfg, res, digest, text=f"valid {f.dims[0]}x{f.dims[1]} sphere, pairing {fg.sphere_degree(f)}")
        return EXIT_PASS
    if action == "phi":
        loop = fg.phi(f)
        res = {"loop": [[X.label(v) for v in l] for l in loop]}
        _emit(cfg, res, digest, text=" ".join(_loop_literal(X, l) for l in loop))
        return EXIT_PASS
    g = _sphere(X, cfg.extra.get("sphere2"), "--sphere2")
    if action == "product":
        p = fg.fs_product(f, g)
        _emit(cfg, {"dims": list(p.dims), "grid": p.to_labels()}, digest, text=str(p))
        return EXIT_PASS
    if action == "equiv":
        r = fg.fs_equivalent(f, g, budget=cfg.budget)
        res = {"status": str(r.status), "explored": r.explored, "notes": r.notes,
               "chain": [[[X.label(v) for v in row] for row in step] for step in r.chain] if r.chain else None}
        _emit(cfg, res, digest, text=f"{r.status} after {r.explored} spheres")
        return EXIT_PASS if r.found else EXIT_INCONCLUSIVE
    raise UsageError(f"unknown face-group action {action!r}")


def cmd_phi(cfg: RunConfig) -> int:
    X, digest, _ = _load_input(cfg.input)
    f = _sphere(X, cfg.extra.get("sphere"))
    loop = fg.phi(f)
    if f.m > cfg.max_len:
        raise ResourceCapError(f"Φ(f) needs loops of length {f.m} > --max-len {cfg.max_len}",
                               {"required_max_len": f.m})
    # components need only the 1-skeleton of ΩX(max_len); the word is read in
    # E(ΩX(m)) for the sphere's own row length m, where triangles stay cheap
    S = build_skeleton(X, cfg.max_len, 1)
    comps = components(S)
    comp = comps.labels[S.index[loop[0]]]
    W = build_skeleton(X, f.m, 2)
    G = W.edge_group()
    w = G.loop_to_word([W.index[l] for l in loop])
    order = abelian_order(G.presentation, w)
    res = {"loop": [[X.label(v) for v in l] for l in loop], "component": comp,
           "word_k": f.m, "word_length": len(w), "abelian_order": order,
           "degree": list(fg.sphere_degree(f))}
    txt = (" ".join(_loop_literal(X, l) for l in loop)
           + f"\ncomponent {comp}; abelian order in E(ΩX({f.m})) "
           + ("infinite" if order == 0 else str(order)))
    _emit(cfg, res, digest, text=txt)
    return EXIT_PASS


def cmd_homology(cfg: RunConfig) -> int:
    X, digest, _ = _load_input(cfg.input)
    target = cfg.extra.get("target", "X")
    dim = cfg.max_dim
    if target == "X":
        h = simplicial_homology(X, dim)
    elif target == "omega":
        h = simplicial_homology(build_skeleton(X, cfg.max_len, dim + 1), dim)
    elif target == "stone":
        h = chain_complex_of_N(X, cfg.max_len, dim + 1).homology(dim)
    else:
        raise UsageError(f"unknown target {target!r}")
    _emit(cfg, h.to_json(), digest, text=f"betti {h.betti}\ntorsion {h.torsion}")
    return EXIT_PASS


def cmd_verify(cfg: RunConfig) -> int:
    suite = cfg.extra.get("suite", "all")
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    scfg = SuiteConfig(max_len=cfg.max_len, max_dim=cfg.max_dim, budget=cfg.budget, seed=cfg.seed)
    digest = None
    if cfg.input:
        X, digest, name = _load_input(cfg.input)
        scfg.inputs = {name: X}
    rep = run_suite(suite, scfg)
    _emit(cfg, rep.to_json(), digest, text=rep.to_text())
    return rep.exit_code


COMMANDS = {
    "build": cmd_build,
    "omega": cmd_omega,
    "edge-group": cmd_edge_group,
    "face-group": cmd_face_group,
    "phi": cmd_phi,
    "homology": cmd_homology,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="facet-list (.sc) or JSON complex, or a bundled name")
    common.add_argument("--max-len", type=int, default=4, help="loop length cap k")
    common.add_argument("--max-dim", type=int, default=2, help="dimension cap")
    common.add_argument("--budget", type=int, default=10**5, help="search budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1,
                        help="accepted for interface stability; runs are single-worker")
    common.add_argument("--out", help="write the artifact here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = _Parser(prog="omegaloop", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"omegaloop {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("build", parents=[common], help="load a complex and report its homology")
    sub.add_parser("omega", parents=[common], help="build the ΩX(k) skeleton and its components")
    sub.add_parser("edge-group", parents=[common], help="edge-group presentation and abelianization")
    q = sub.add_parser("face-group", parents=[common], help="face sphere operations")
    q.add_argument("action", choices=("validate", "product", "phi", "equiv"))
    q.add_argument("--sphere", help="JSON grid of labels, one row per time step")
    q.add_argument("--sphere2")
    q = sub.add_parser("phi", parents=[common], help="Φ of a face sphere, placed in ΩX(k)")
    q.add_argument("--sphere")
    q = sub.add_parser("homology", parents=[common], help="integer homology")
    q.add_argument("--target", choices=("X", "omega", "stone"), default="X")
    q.add_argument("--k", type=int, dest="k_alias", help="same as --max-len")
    q.add_argument("--dim", type=int, dest="dim_alias", help="same as --max-dim")
    q = sub.add_parser("verify", parents=[common], help="run verification suites")
    q.add_argument("--suite", default="all")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ns = vars(args)
    extra = {k: ns.pop(k) for k in ("action", "sphere", "sphere2", "target", "suite") if k in ns}
    if ns.get("k_alias") is not None:
        ns["max_len"] = ns["k_alias"]
    if ns.get("dim_alias") is not None:
        ns["max_dim"] = ns["dim_alias"]
    ns.pop("k_alias", None)
    ns.pop("dim_alias", None)
    cfg = RunConfig(extra={k: v for k, v in extra.items() if v is not None}, **ns)
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except UsageError as e:
        sys.stderr.write(f"omegaloop: {e}\n")
        return EXIT_USAGE
    except ResourceCapError as e:
        sys.stderr.write(f"omegaloop: resource cap: {e} {e.counts}\n")
        return EXIT_CAP
    except (ComplexError, PathError, OmegaError, fg.FaceSphereError, HomologyError) as e:
        sys.stderr.write(f"omegaloop: {type(e).__name__}: {e}\n")
        w = getattr(e, "witness", None) or getattr(e, "position", None)
        if w is not None:
            sys.stderr.write(f"witness: {json.dumps(w)}\n")
        return EXIT_FAIL
    except AssertionError as e:
        sys.stderr.write(f"omegaloop: assertion failed: {e}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
