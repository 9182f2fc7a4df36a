"""Census of the shifted W_l action on short q-analogues.

For each w in W_l and mu in a box, compare mbar_lam^{w . mu} with
eps(w) mbar_lam^mu as polynomials and at q = 1, and report which elements of
W_l are responsible for the polynomial-level failures.
"""
import argparse
from collections import Counter

from kfq.qanalogue import dominant_weights, short_q, weight_box
from kfq.rootsys import build_root_system
from kfq.weyl import generate


def census(label: str, level: int, box: int):
    rs = build_root_system(label)
    W = generate(rs)
    bad_poly, bad_one, total = Counter(), Counter(), 0
    for lam in dominant_weights(rs, level):
        for mu in weight_box(rs.rank, box):
            m = short_q(rs, lam, mu)
            for k in W.long_subgroup.elements:
                total += 1
                v = short_q(rs, lam, W.shifted_action(k, mu))
                s = int(W.signs[k])
                if v != m * s:
                    bad_poly[W.word(k)] += 1
                if v(1) != m(1) * s:
                    bad_one[W.word(k)] += 1
    print(f"{label}: {total} comparisons, {sum(bad_poly.values())} fail as polynomials, "
          f"{sum(bad_one.values())} fail at q = 1")
    for word in sorted(set(W.word(k) for k in W.long_subgroup.elements), key=len):
        print(f"  w = s{''.join(str(i + 1) for i in word) or '(identity)'}: {bad_poly[word]} failures")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("types", nargs="*", default=["C2", "G2"])
    ap.add_argument("--level", type=int, default=2)
    ap.add_argument("--box", type=int, default=3)
    args = ap.parse_args()
    for label in args.types:
        census(label, args.level, args.box)


if __name__ == "__main__":
    main()
