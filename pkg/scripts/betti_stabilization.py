"""Betti numbers and torsion of ΩX(k) and N(k) side by side, k = 1..kmax."""
import argparse
import time

from omegaloop.complex import bundled
from omegaloop.loopspace import ResourceCapError, build_skeleton
from omegaloop.stone import chain_complex_of_N, simplicial_homology


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--complexes", nargs="+", default=["c3", "c4", "k4hollow"])
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--dim", type=int, default=2, help="top homology degree")
    args = ap.parse_args()
    for name in args.complexes:
        X = bundled(name)
        print(name)
        for k in range(1, args.kmax + 1):
            t = time.perf_counter()
            try:
                hS = simplicial_homology(build_skeleton(X, k, args.dim + 1), args.dim)
                hN = chain_complex_of_N(X, k, args.dim + 1, check=False).homology(args.dim)
            except ResourceCapError as e:
                print(f"  k={k}: cap hit {e.counts}")
                break
            flag = "ok" if hS.agrees(hN, args.dim) else "MISMATCH"
            print(f"  k={k}: ΩX betti {hS.betti} torsion {hS.torsion} | "
                  f"N betti {hN.betti} torsion {hN.torsion}  {flag}  ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()
