"""Run the metatheory property suites and print one summary line per suite."""

import argparse
import sys

from idxcheck.experiments import metatheory


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-n", type=int, default=10_000, help="cases per suite")
    args = ap.parse_args()
    results = metatheory(args.seed, args.n)
    for r in results:
        print(r.summary())
        for f in r.failures[:5]:
            print("  ", f)
    print(f"total {sum(r.seconds for r in results):.1f}s")
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
