"""Certify every Q-row, its reversal and a batch of random binomials."""

import argparse
import random
import time
from collections import Counter

from tropprof.certify import BinomialInequality, certify, format_inequality
from tropprof.tropical import build_Q


def random_inequality(rng, m):
    while True:
        alpha = [rng.choice([0, 0, 0, 1, 2, 3]) for _ in range(m + 1)]
        beta = [rng.choice([0, 0, 0, 1, 2, 3]) for _ in range(m + 1)]
        if any(alpha) and any(beta):
            return BinomialInequality(m, tuple(alpha), tuple(beta))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--random", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    q = build_Q(args.m)
    for lab, row in zip(q.labels, q.rows):
        ineq = BinomialInequality.from_functional(args.m, row)
        fwd = certify(ineq)
        back = certify(ineq.reversed(), counterexample=True)
        cx = back.refutation.counterexample
        print(f"{lab:>4}  {format_inequality(ineq):<28} VALID={fwd.is_valid}  "
              f"reversed refuted by ray {back.refutation.ray_id} at n={cx.n if cx else '-'}")
    rng = random.Random(args.seed)
    tally = Counter()
    t0 = time.perf_counter()
    for _ in range(args.random):
        r = certify(random_inequality(rng, args.m), counterexample=True)
        if r.is_valid:
            tally["valid"] += 1
        elif r.refutation.counterexample is not None:
            tally["invalid with counterexample"] += 1
        else:
            tally["invalid, asymptotic only"] += 1
    print(f"\n{args.random} random binomials in {time.perf_counter() - t0:.1f}s: {dict(tally)}")


if __name__ == "__main__":
    main()
