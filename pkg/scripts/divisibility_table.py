#!/usr/bin/env python3
"""Print the 4-divisibility table for the rank-one counterexample curve
y^2 = (x+15)(x-5)(x-10) with P = (1561/144, 19459/1728): one row per place
up to a prime bound, plus the real place.

Usage: python scripts/divisibility_table.py [--bound 97] [--k 2]
"""

import argparse
from fractions import Fraction

from locglob import Curve, Place, divisible_by_2k
from locglob.arith import is_prime


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=97)
    ap.add_argument("--k", type=int, default=2)
    args = ap.parse_args()

    curve = Curve(Fraction(-15), Fraction(5), Fraction(10))
    point = curve.point(Fraction(1561, 144), Fraction(19459, 1728))

    places = [Place.finite(p) for p in range(2, args.bound + 1) if is_prime(p)]
    places.append(Place.real())
    print("place   k   divisible")
    failures = []
    for v in places:
        res = divisible_by_2k(curve, point, args.k, v)
        print("%-7s %-3d %s" % (v, args.k, "yes" if res else "no"))
        if not res:
            failures.append(str(v))
    print()
    print("not divisible at: %s" % (", ".join(failures) or "nowhere"))


if __name__ == "__main__":
    main()
