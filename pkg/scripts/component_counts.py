"""Component counts of ΩX(k) for a range of k, next to the C4 formula 2⌊k/4⌋+1."""
import argparse
import time

from omegaloop.complex import bundled, read_complex
from omegaloop.loopspace import build_skeleton, components


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", default="c4", help="bundled name or path")
    ap.add_argument("--kmin", type=int, default=0)
    ap.add_argument("--kmax", type=int, default=8)
    args = ap.parse_args()
    X = bundled(args.input) if "." not in args.input else read_complex(args.input)
    print("k  vertices  edges  components" + ("  2⌊k/4⌋+1" if args.input == "c4" else ""))
    for k in range(args.kmin, args.kmax + 1):
        t = time.perf_counter()
        S = build_skeleton(X, k, 1)
        n = components(S).count
        extra = f"  {2 * (k // 4) + 1:9d}" if args.input == "c4" else ""
        print(f"{k:<2} {S.n_vertices:8d} {len(S.simplices(1)):6d} {n:11d}{extra}"
              f"   ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
