"""Crossing growth of grid approximations of the logistic map for a few parameters.

Every number printed here comes from a PWL approximant, not the smooth map.
"""
import argparse
from fractions import Fraction

from pwlchaos.maps import approximate_map, logistic
from pwlchaos.pwl import ResourceLimitExceeded, count_crossings, iterates


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=256)
    ap.add_argument("--t-max", type=int, default=6)
    ap.add_argument("--cap", type=int, default=10**6)
    args = ap.parse_args()
    lo, hi = Fraction(1, 4), Fraction(3, 4)
    print("# approximate=true")
    print("r,t,pieces,crossings")
    for r in ("2.8", "3.2", "3.5", "3.83", "3.9", "4"):
        f = approximate_map(logistic(r), args.grid)
        try:
            for t, h in iterates(f, args.t_max, args.cap):
                print(f"{r},{t},{h.pieces},{count_crossings(h, lo, hi)}")
        except ResourceLimitExceeded as exc:
            print(f"# r={r}: stopped, {exc}")


if __name__ == "__main__":
    main()
