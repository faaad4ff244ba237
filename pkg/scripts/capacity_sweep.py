"""Channel-information bound across strategies and alphabet sizes.

For each (n, d) and each builtin strategy, print whether the strategy
reproduces the box family (the premise) and how much information about the
hidden input actually reaches the receiver, against the 1/n cap.
"""

import argparse
import sys

from racbox.capacity import (
    BUILTIN_STRATEGIES,
    verify_capacity_bound_bits,
    verify_capacity_bound_dits,
)
from racbox.reports import format_value


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", default="2:2,3:2,2:3,3:3",
                    help="comma list of n:d pairs (default 2:2,3:2,2:3,3:3)")
    args = ap.parse_args()

    pairs = []
    for tok in args.pairs.split(","):
        n_s, _, d_s = tok.strip().partition(":")
        pairs.append((int(n_s), int(d_s)))

    for n, d in pairs:
        for name, builder in sorted(BUILTIN_STRATEGIES.items()):
            try:
                strategy = builder(n, d)
            except ValueError as exc:
                print(f"(n={n}, d={d}) {name:10s} skipped: {exc}")
                continue
            report = (
                verify_capacity_bound_bits(n, strategy)
                if d == 2
                else verify_capacity_bound_dits(n, d, strategy)
            )
            premise = next(
                (note for note in report.notes if note.startswith("premise")), ""
            )
            mi = "-" if report.quantity is None else format_value(report.quantity)
            print(
                f"(n={n}, d={d}) {name:10s} "
                f"{'pass' if report.passed else 'FAIL'}  "
                f"information={mi} bound={format_value(report.bound)}  {premise}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
