#!/usr/bin/env python3
"""Scan random line arrangements for gaps between the oracle Hilbert function
and the triple-only candidate presentation.

Arrangements whose lines contain a minimal dependency of size > 3 (a circuit
with no internal zero-sum triple) are where the candidate presentation
overshoots; this script hunts for them and prints the first weight where the
tables diverge.

Example:
    python scripts/arrangement_scan.py --p 3 --n 3 --count 50 --cutoff 5
"""

import argparse
import random

from phiring.charspace import GroupContext, enumerate_lines, zero_sum_triples
from phiring.rograde import localized_hilbert


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=3)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--min-size", type=int, default=1)
    parser.add_argument("--max-size", type=int, default=4)
    parser.add_argument("--cutoff", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    ctx = GroupContext(args.p, args.n)
    pool = list(enumerate_lines(ctx))
    rng = random.Random(args.seed)
    seen = set()
    gaps = 0
    for i in range(args.count):
        size = rng.randint(args.min_size, min(args.max_size, len(pool)))
        S = tuple(sorted(rng.sample(pool, size)))
        if S in seen:
            continue
        seen.add(S)
        res = localized_hilbert(ctx, S, args.cutoff)
        name = ";".join(str(line) for line in S)
        if res.ok:
            print("[%03d] equal      %s" % (i, name))
            continue
        gaps += 1
        first_gap = next(w for w, good in enumerate(res.equal) if not good)
        triples = len(zero_sum_triples(S, ctx))
        print("[%03d] GAP at w=%d %s (internal triples: %d)" % (i, first_gap, name, triples))
        print("      oracle      : %s" % (res.oracle,))
        print("      presentation: %s" % (res.presentation,))
    print("scanned %d distinct arrangements, %d with gaps" % (len(seen), gaps))


if __name__ == "__main__":
    main()
