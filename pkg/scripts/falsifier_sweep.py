"""Run the random falsifier over every Q-row and star-cone row."""

import argparse
import time

from tropprof.certify import STAR, BinomialInequality, format_inequality
from tropprof.falsifier import SearchConfig, random_search
from tropprof.tropical import build_Q, build_star_cone


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SearchConfig(max_vertices=args.max_n, samples=args.samples, seed=args.seed)
    for family, cone in (("almost-star", build_Q(args.m)), (STAR, build_star_cone(args.m))):
        for lab, row in zip(cone.labels, cone.rows):
            ineq = BinomialInequality.from_functional(args.m, row, family)
            for name, q in (("row", ineq), ("reversed", ineq.reversed())):
                t0 = time.perf_counter()
                rep = random_search(q, cfg)
                print(f"{family:<11} {lab:>4} {name:<8} {format_inequality(q):<28} "
                      f"{rep.summary()}  [{time.perf_counter() - t0:.1f}s]")


if __name__ == "__main__":
    main()
