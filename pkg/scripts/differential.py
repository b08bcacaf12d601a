"""Check generated closed programs with both the algorithm and the
declarative oracle, and report agreement and the unknown rate."""

import argparse
import sys

from idxcheck.experiments import closed_differential
from idxcheck.oracle import Fuel


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-n", type=int, default=10_000, help="number of programs")
    ap.add_argument("--guess-size", type=int, default=Fuel().guess_size)
    ap.add_argument("--depth", type=int, default=Fuel().depth)
    args = ap.parse_args()
    r = closed_differential(args.seed, args.n, Fuel(args.guess_size, args.depth), on_disagreement=print)
    print(r.summary())
    return 0 if r.ok else 1


if __name__ == "__main__":
    sys.exit(main())
