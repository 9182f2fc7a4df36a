"""Tabulate the non-negativity equivalence: for each mu in the box, the
pairing bound, the interval condition and the first negative witness.

    python scripts/vanishing_scan.py C2 --box 3 --cap 10
    python scripts/vanishing_scan.py B3 --psi positive
"""
import argparse

from kfq.qanalogue import (broer_condition, interval_condition, is_h_dominant, nonneg_scan,
                           weight_box)
from kfq.rootsys import build_root_system, sub


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("label")
    ap.add_argument("--box", type=int, default=3)
    ap.add_argument("--cap", type=int, default=10)
    ap.add_argument("--psi", choices=("short", "positive"), default="short")
    args = ap.parse_args()
    rs = build_root_system(args.label)
    disagree = 0
    for mu in weight_box(rs.rank, args.box):
        if args.psi == "short" and not is_h_dominant(rs, mu):
            continue
        plus, _ = rs.dominant_conjugate(mu)
        cap = max(args.cap, rs.height(sub(plus, mu))) if args.psi == "positive" else args.cap
        b = broer_condition(rs, mu, args.psi)
        i = interval_condition(rs, mu, "short" if args.psi == "short" else "all")
        scan = nonneg_scan(rs, mu, cap, args.psi)
        disagree += not (b == i == scan.all_nonneg)
        wit = "" if scan.witness is None else f"lambda={scan.witness[0]} m={scan.witness[1]}"
        print(f"{str(mu):>16}  bound={b!s:<5} interval={i!s:<5} nonneg={scan.all_nonneg!s:<5} {wit}")
    print(f"disagreements: {disagree}")


if __name__ == "__main__":
    main()
