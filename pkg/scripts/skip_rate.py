"""Estimate how often random rational parameters are degenerate, per r and seed.

    python3 scripts/skip_rate.py --count 200 --seeds 1 2 3
"""

import argparse
from collections import Counter

from jpineiro.pineiro import DegenerateParameters, build_annihilator, p_via_orthogonality
from jpineiro.verify import generic_samples


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seeds", type=int, nargs="+", default=[20070101])
    parser.add_argument("--r", type=int, nargs="+", default=[1, 2])
    args = parser.parse_args()
    for seed in args.seeds:
        tally = Counter()
        for p in generic_samples(args.count, seed, r_values=args.r):
            try:
                P = p_via_orthogonality(p)
            except DegenerateParameters:
                tally["skipped"] += 1
                continue
            tally["annihilated" if build_annihilator(p)(P).is_zero() else "FAILED"] += 1
        print(f"seed {seed}: {dict(tally)}  skip rate {tally['skipped'] / args.count:.1%}")


if __name__ == "__main__":
    main()
