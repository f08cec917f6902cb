"""Log-ratio slopes of the scaled graph families against their target rays."""

import argparse

from tropprof.graph import FamilyDescriptor, FamilyKind
from tropprof.homcount import family_profile, log_ratio_vector
from tropprof.tropical import ray_vector

FAMILIES = [("d1", FamilyKind.ISOLATED_PLUS_EDGE), ("d3", FamilyKind.STAR),
            ("d4", FamilyKind.COMPLETE_BIPARTITE), ("d5", FamilyKind.P2_BLOWUP)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--exponents", type=int, nargs="+", default=[2, 3, 4, 5, 6, 8])
    args = ap.parse_args()
    print("max |log-ratio - ray| by family and n = 10^e")
    print("family " + " ".join(f"{'1e' + str(e):>9}" for e in args.exponents))
    for rid, kind in FAMILIES:
        target = ray_vector(rid, args.m)
        devs = []
        for e in args.exponents:
            n = 10**e
            logs = log_ratio_vector(family_profile(FamilyDescriptor(kind, n), args.m), n)
            devs.append(max(abs(a - b) for a, b in zip(logs, target)))
        print(f"{rid:<6} " + " ".join(f"{d:>9.5f}" for d in devs))


if __name__ == "__main__":
    main()
