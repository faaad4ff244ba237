"""Winning probabilities of compiled n->1 codes as the box quality varies.

Reproduces the reference table: one row per database size, one column per
box quality p2 (classical 3/4 and the boosted (2+sqrt 2)/4 by default).
"""

import argparse
import math
import sys

from racbox.wiring import bound_table, format_bound_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=10)
    ap.add_argument("--p2", type=float, action="append",
                    help="repeatable; default 0.75 and (2+sqrt 2)/4")
    ap.add_argument("--digits", type=int, default=6)
    args = ap.parse_args()

    p2s = args.p2 or [0.75, (2 + math.sqrt(2)) / 4]
    rows = bound_table(range(2, args.nmax + 1), p2s)
    print(format_bound_table(rows, [f"p2={p:.6f}" for p in p2s], digits=args.digits))
    return 0


if __name__ == "__main__":
    sys.exit(main())
