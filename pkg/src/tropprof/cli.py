"""Command-line interface: ``tropprof <command> ...``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .certify import (ALMOST_STAR, STAR, Invalid, InequalityError, SearchBudget, Valid, certify,
                      densify_to_numbers, format_inequality, format_rational, parse_density,
                      parse_inequality)
from .cone import ConeError, contains, extreme_rays, verify_extreme
from .falsifier import SearchConfig, default_families, random_search
from .graph import RAY_FAMILY, FamilyDescriptor, FamilyKind, GraphError, build_family, format_graph, read_graph
from .hde import HdePreconditionError, format_hde, hde
from .homcount import almost_star_counts, family_profile, log_ratio_vector
from .linalg import dot
from .tropical import (UnsupportedParameterError, build_star_cone, enumerate_expected_rays, build_Q,
                       ray_vector, star_rays)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2
MATERIALIZE_LIMIT = 2000


def _vec(v) -> str:
    return "(" + ", ".join(format_rational(Fraction(x)) for x in v) + ")"


def report_verdict(res: Valid | Invalid) -> str:
    ineq = res.inequality
    lines = ["VALID" if res.is_valid else "INVALID", f"inequality: {format_inequality(ineq)}",
             f"functional: {_vec(ineq.functional)}"]
    if isinstance(res, Valid):
        cert = res.certificate
        if not cert.support():
            lines.append("certificate: 0 (both sides are equal)")
        else:
            lines.append("certificate:")
            lines += ["  " + s for s in cert.lines()]
        return "\n".join(lines) + "\n"
    ref = res.refutation
    c = ineq.functional
    lines.append(f"farkas ray: {_vec(ref.farkas_ray.direction)}")
    rid = str(ref.ray_id) if ref.ray_id else "unmatched"
    lines.append(f"violating ray: {rid} {_vec(ref.violating_ray.direction)}"
                 f"  c.ray = {format_rational(dot(c, ref.violating_ray.direction))}")
    if ref.construction is not None:
        lines.append(f"construction: {ref.construction}")
    cx = ref.counterexample
    if cx is not None:
        lines.append(f"counterexample: n={cx.n} l={cx.l} vertices={cx.num_vertices}")
        lines.append(f"  graph: {cx.description}")
        lines.append(f"  profile: {_vec(cx.profile.counts)}")
        lines.append(f"  lhs = {cx.lhs}")
        lines.append(f"  rhs = {cx.rhs}")
        lines.append("  lhs < rhs")
        if cx.graph is not None:
            lines.append("  edge list:")
            lines += ["    " + s for s in format_graph(cx.graph).splitlines()]
    elif ref.asymptotic_only:
        lines.append("counterexample: none within the search budget (asymptotic refutation only)")
    return "\n".join(lines) + "\n"


def cmd_certify(args) -> int:
    if args.density:
        ineq = densify_to_numbers(parse_density(args.inequality), args.m)
    else:
        ineq = parse_inequality(args.inequality, args.m)
    budget = SearchBudget(max_n=args.max_n, max_l=args.max_l)
    sys.stdout.write(report_verdict(certify(ineq, counterexample=args.counterexample, budget=budget)))
    return EXIT_OK


def cmd_rays(args) -> int:
    m = args.m
    expected = enumerate_expected_rays(m)
    if args.enumerate:
        for r in extreme_rays(build_Q(m).cone):
            print(r)
        return EXIT_OK
    if args.diff:
        got = set(extreme_rays(build_Q(m).cone))
        want = set(expected)
        if got == want:
            print(f"{len(got)} rays; enumerated == expected")
            return EXIT_OK
        print(f"enumerated {len(got)} rays, expected {len(want)}")
        for r in sorted(got - want):
            print(f"  only enumerated: {r}")
        for r in sorted(want - got):
            print(f"  only expected: {expected[r]} {r}")
        return EXIT_MISMATCH
    for r, rid in expected.items():
        print(f"{rid}: {r}")
    return EXIT_OK


def cmd_realize(args) -> int:
    kind = RAY_FAMILY[args.family]
    desc = FamilyDescriptor(kind, 1 if kind is FamilyKind.SINGLE_EDGE else args.n)
    pv = family_profile(desc, args.m)
    print(f"family: {desc} ({desc.num_vertices} vertices)")
    if desc.num_vertices <= MATERIALIZE_LIMIT:
        g = build_family(desc)
        if almost_star_counts(g, args.m) != pv:
            raise ArithmeticError("closed-form profile disagrees with the built graph")
        print("profile checked against the built graph")
    print(f"profile: {_vec(pv.counts)}")
    target = [ray_vector(args.family, max(args.m, 5))[j] for j in range(args.m + 1)]
    print(f"target ray: {_vec(target)}")
    if kind is FamilyKind.SINGLE_EDGE:
        return EXIT_OK
    logs = log_ratio_vector(pv, args.n)
    print("log-ratios: (" + ", ".join(f"{x:.6f}" for x in logs) + ")")
    print(f"max deviation from target: {max(abs(a - b) for a, b in zip(logs, target)):.6f}")
    return EXIT_OK


def cmd_hde(args) -> int:
    f2 = read_graph(args.f2)
    res = hde(read_graph(args.f1), f2, skip_sp_check=args.skip_sp_check)
    sys.stdout.write(format_hde(res, f2))
    return EXIT_OK


def cmd_falsify(args) -> int:
    family = STAR if args.star else ALMOST_STAR
    ineq = parse_inequality(args.inequality, args.m, family=family)
    probs = tuple(Fraction(p) for p in args.p) if args.p else SearchConfig.edge_probabilities
    cfg = SearchConfig(max_vertices=args.max_n, samples=args.samples, edge_probabilities=probs,
                       seed=args.seed, structured_families=default_families(args.family_n))
    rep = random_search(ineq, cfg)
    print(f"inequality: {format_inequality(ineq)}")
    print(rep.summary())
    if rep.violated:
        print(f"lhs = {rep.lhs}")
        print(f"rhs = {rep.rhs}")
        print("edge list:")
        sys.stdout.write(format_graph(rep.graph))
    return EXIT_OK


def cmd_star_cone(args) -> int:
    q = build_star_cone(args.m)
    print(f"star cone, m={args.m}, {len(q.rows)} rows")
    for lab, row in zip(q.labels, q.rows):
        print(f"  {lab}: {_vec(row)}")
    print("listed rays:")
    for r in star_rays(args.m):
        print(f"  {_vec(r)} member={contains(q.cone, r)} extreme={verify_extreme(q.cone, r)}")
    if args.enumerate:
        rays = extreme_rays(q.cone)
        print(f"extreme rays ({len(rays)}):")
        for r in rays:
            print(f"  {r}")
    if args.certify:
        ineq = parse_inequality(args.certify, args.m, family=STAR)
        sys.stdout.write(report_verdict(certify(ineq)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tropprof", description="Binomial inequalities between almost-star hom numbers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="decide an inequality, e.g. 'T0^4 >= T1^3'")
    p.add_argument("inequality")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--counterexample", action="store_true", help="search for a concrete violating graph")
    p.add_argument("--density", action="store_true", help="read the atoms as homomorphism densities")
    p.add_argument("--max-n", type=int, default=SearchBudget.max_n)
    p.add_argument("--max-l", type=int, default=SearchBudget.max_l)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("rays", help="extreme rays of Q(m)")
    p.add_argument("--m", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--enumerate", action="store_true", help="run double description")
    g.add_argument("--expected", action="store_true", help="list the closed-form families (default)")
    g.add_argument("--diff", action="store_true", help="compare enumerated and expected rays")
    p.set_defaults(func=cmd_rays)

    p = sub.add_parser("realize", help="profile of a d-ray family graph")
    p.add_argument("--family", choices=sorted(RAY_FAMILY), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1000)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("hde", help="homomorphism domination exponent of two graph files")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("--skip-sp-check", action="store_true")
    p.set_defaults(func=cmd_hde)

    p = sub.add_parser("falsify", help="search for a violating graph")
    p.add_argument("inequality")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-n", type=int, default=8, help="largest random graph")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", action="append", help="edge probability (repeatable), e.g. 1/2")
    p.add_argument("--family-n", type=int, default=10, help="largest structured family parameter")
    p.add_argument("--star", action="store_true", help="atoms are stars S1..Sm")
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("star-cone", help="the cone of star hom numbers")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--certify", metavar="INEQUALITY", help="decide an inequality in V, S1..Sm")
    p.set_defaults(func=cmd_star_cone)
    return ap


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InequalityError, GraphError, UnsupportedParameterError, HdePreconditionError,
            ConeError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
