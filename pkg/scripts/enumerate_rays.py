"""Enumerate the extreme rays of Q(m) and compare with the closed forms."""

import argparse
import time

from tropprof.cone import extreme_rays
from tropprof.tropical import build_Q, enumerate_expected_rays


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-min", type=int, default=5)
    ap.add_argument("--m-max", type=int, default=10)
    args = ap.parse_args()
    print(f"{'m':>3} {'rays':>5} {'expected':>8} {'match':>6} {'seconds':>8}")
    for m in range(args.m_min, args.m_max + 1):
        t0 = time.perf_counter()
        got = set(extreme_rays(build_Q(m).cone))
        dt = time.perf_counter() - t0
        want = set(enumerate_expected_rays(m))
        print(f"{m:>3} {len(got):>5} {len(want):>8} {str(got == want):>6} {dt:>8.3f}")


if __name__ == "__main__":
    main()
