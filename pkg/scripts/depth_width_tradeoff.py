"""Widest network per depth that is still forced to error >= 1/4, for several odd periods p.

Also verifies the bound on the tent(2) dataset for every (l, u) with (2u)^l below 2n.
"""
import argparse
from fractions import Fraction

from pwlchaos.bounds import build_alternating_dataset, tradeoff_table, verify_error_bound
from pwlchaos.pwl import tent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=24)
    ap.add_argument("--dataset-k", type=int, default=12)
    args = ap.parse_args()

    print("p,l,u_max,threshold")
    for p in (3, 5, 7, 9):
        for row in tradeoff_table(p, args.k, range(1, 7)):
            print(f"{p},{row.l},{row.u_max},{row.bound_value:.6g}")

    d = build_alternating_dataset(tent(2), 1, 3, args.dataset_k, Fraction(4, 9), Fraction(8, 9))
    print(f"\n# dataset k={args.dataset_k} n={d.n}")
    print("l,u,bound,oracle,quarter")
    for l in range(1, 4):
        u = 1
        while (2 * u) ** l < 2 * d.n:
            rep = verify_error_bound(d, l, u)
            print(f"{l},{u},{float(rep.bound):.4f},{float(rep.oracle):.4f},{int(rep.quarter_claimed)}")
            u += 1


if __name__ == "__main__":
    main()
