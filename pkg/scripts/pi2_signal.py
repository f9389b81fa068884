"""Φ of the degree-1 sphere on the hollow 3-simplex, read in E(ΩX(k)) for growing k."""
import argparse

from omegaloop import facegroup as fg
from omegaloop.complex import bundled
from omegaloop.groups import abelian_order, abelianization
from omegaloop.loopspace import build_skeleton

DEG1 = [(0, 0, 0, 0), (0, 1, 1, 0), (0, 2, 3, 0), (0, 0, 0, 0)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=4)
    args = ap.parse_args()
    X = bundled("k4hollow")
    f = fg.validate_face_sphere(X, DEG1)
    print("sphere\n" + str(f))
    print("degree pairing", fg.sphere_degree(f))
    print("Φ(f) =", " ".join("[" + ",".join(X.label(v) for v in l) + "]" for l in fg.phi(f)))
    for k in range(f.m, args.kmax + 1):
        S = build_skeleton(X, k, 2)
        G = S.edge_group()
        ab = abelianization(G.presentation)
        loop = fg.phi(f)
        order = abelian_order(G.presentation, G.loop_to_word([S.index[l] for l in loop]))
        print(f"k={k}: E(ΩX(k)) abelianized rank {ab.rank} torsion {list(ab.torsion)}; "
              f"order of Φ(f): {'infinite' if order == 0 else order}")


if __name__ == "__main__":
    main()
