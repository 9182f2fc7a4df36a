"""Run the identity catalogue and print per-identity counts, failures and time.

    python scripts/catalogue_timing.py C2 G2 B3 C3
    KFQ_F4=1 python scripts/catalogue_timing.py F4
"""
import argparse
import time
from collections import defaultdict

from kfq.config import CatalogueGrid
from kfq.rootsys import build_root_system
from kfq.shorthl import verify_identity
from kfq.verify import catalogue_params


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("types", nargs="*", default=["C2", "G2", "B3", "C3"])
    args = ap.parse_args()
    grid = CatalogueGrid()
    for label in args.types:
        rs = build_root_system(label)
        count, failed, spent = defaultdict(int), defaultdict(int), defaultdict(float)
        t0 = time.perf_counter()
        for name, params in catalogue_params(rs, grid=grid):
            t = time.perf_counter()
            rep = verify_identity(name, params)
            spent[name] += time.perf_counter() - t
            count[name] += 1
            failed[name] += not rep.passed
        print(f"{label}: {time.perf_counter() - t0:.1f}s")
        for name in count:
            print(f"  {name:<18} {count[name]:>5} checked  {failed[name]:>3} failed  {spent[name]:7.1f}s")


if __name__ == "__main__":
    main()
