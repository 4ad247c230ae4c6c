#!/usr/bin/env python3
"""Tabulate derivative-term counts per node-count bound.

Useful for choosing exhaustive-check bounds: prints, for each bound, the
number of derivative terms of the formal-sum dilator at levels 0..2 and the
wall time of the enumeration.
"""

import argparse
import time

from dilators.derivative import deriv_enumerate
from dilators.praedil import registry_get


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dilator", default="omega")
    parser.add_argument("--max-bound", type=int, default=11)
    parser.add_argument("--levels", type=int, default=3)
    args = parser.parse_args()
    T = registry_get(args.dilator)
    print("bound\t" + "\t".join(f"n={n}" for n in range(args.levels)) + "\tseconds")
    for bound in range(1, args.max_bound + 1):
        t0 = time.time()
        counts = [len(deriv_enumerate(T, n, bound)) for n in range(args.levels)]
        print(f"{bound}\t" + "\t".join(map(str, counts)) + f"\t{time.time() - t0:.2f}")


if __name__ == "__main__":
    main()
