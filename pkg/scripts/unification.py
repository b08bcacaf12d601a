"""Compare equation elimination with a textbook unifier on generated pairs."""

import argparse
import sys

from idxcheck.experiments import unification


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-n", type=int, default=10_000, help="number of pairs")
    ap.add_argument("--max-size", type=int, default=6)
    ap.add_argument("--probe-size", type=int, default=3)
    args = ap.parse_args()
    r = unification(args.seed, args.n, args.max_size, args.probe_size)
    print(r.summary())
    for f in r.failures[:10]:
        print("  ", f)
    return 0 if r.ok else 1


if __name__ == "__main__":
    sys.exit(main())
