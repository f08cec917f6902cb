"""Exact empirical checks of binomial inequalities on concrete graphs.

Random graphs come from ``random.Random`` (Mersenne Twister MT19937) seeded
with the configured integer. A sample draws ``n`` uniformly from
``1..max_vertices``, takes the edge probability ``p = a/b`` cyclically from
the configured list, and keeps each pair ``u < v`` (lexicographic order)
when ``randrange(b) < a``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .certify import STAR, BinomialInequality, side_values
from .graph import FamilyDescriptor, FamilyKind, Graph, build_family
from .homcount import ProfileVector, almost_star_counts, star_counts

MAX_VERTICES_LIMIT = 12


@dataclass(frozen=True)
class FamilyRange:
    kind: FamilyKind
    n_min: int
    n_max: int

    def instances(self) -> Iterator[FamilyDescriptor]:
        for n in range(self.n_min, self.n_max + 1):
            yield FamilyDescriptor(self.kind, n)


def default_families(n_max: int = 10) -> tuple[FamilyRange, ...]:
    return (
        FamilyRange(FamilyKind.ISOLATED_PLUS_EDGE, 3, n_max),
        FamilyRange(FamilyKind.SINGLE_EDGE, 1, 1),
        FamilyRange(FamilyKind.MATCHING, 1, n_max),
        FamilyRange(FamilyKind.STAR, 1, n_max),
        FamilyRange(FamilyKind.COMPLETE_BIPARTITE, 1, n_max),
        FamilyRange(FamilyKind.P2_BLOWUP, 1, n_max),
    )


@dataclass(frozen=True)
class SearchConfig:
    max_vertices: int = 8
    samples: int = 10_000
    edge_probabilities: tuple[Fraction, ...] = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    seed: int = 0
    structured_families: tuple[FamilyRange, ...] = field(default_factory=default_families)

    def __post_init__(self):
        if not 1 <= self.max_vertices <= MAX_VERTICES_LIMIT:
            raise ValueError(f"max_vertices must lie in [1, {MAX_VERTICES_LIMIT}]")
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")
        probs = tuple(Fraction(p) for p in self.edge_probabilities)
        if not probs or any(not 0 <= p <= 1 for p in probs):
            raise ValueError("edge probabilities must be a nonempty list in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "edge_probabilities", probs)


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    lhs: int
    rhs: int
    outside_positive_profile: bool


@dataclass(frozen=True)
class CheckReport:
    violated: bool
    graphs_checked: int
    graph: Graph | None = None
    source: str = ""
    lhs: int | None = None
    rhs: int | None = None
    outside_positive_profile: bool = False

    def summary(self) -> str:
        if not self.violated:
            return f"NoViolationFound ({self.graphs_checked} graphs checked)"
        flag = " [outside positive profile]" if self.outside_positive_profile else ""
        return f"Violated on {self.source} after {self.graphs_checked} graphs{flag}"


def profile_of(ineq: BinomialInequality, g: Graph) -> ProfileVector:
    return star_counts(g, ineq.m) if ineq.family == STAR else almost_star_counts(g, ineq.m)


def check_on_graph(ineq: BinomialInequality, g: Graph) -> CheckResult:
    """Compare both sides exactly, raised to clear exponent denominators."""
    counts = profile_of(ineq, g).counts
    lhs, rhs = side_values(ineq, counts)
    return CheckResult(lhs >= rhs, lhs, rhs, any(c == 0 for c in counts))


def erdos_renyi(rng: random.Random, n: int, p: Fraction) -> Graph:
    return Graph.from_edges(n, (e for e in combinations(range(n), 2) if rng.randrange(p.denominator) < p.numerator))


def candidate_graphs(cfg: SearchConfig) -> Iterator[tuple[str, Graph]]:
    """Structured family instances, then the seeded random samples."""
    for fr in cfg.structured_families:
        for d in fr.instances():
            yield str(d), build_family(d)
    rng = random.Random(cfg.seed)
    probs = cfg.edge_probabilities
    for s in range(cfg.samples):
        n = rng.randint(1, cfg.max_vertices)
        p = probs[s % len(probs)]
        yield f"G({n}, {p}) sample {s}", erdos_renyi(rng, n, p)


def random_search(ineq: BinomialInequality, cfg: SearchConfig = SearchConfig()) -> CheckReport:
    """First violation in enumeration order.

    A violation on a graph with a zero hom count lies outside the positive
    profile; it is kept as a fallback while the search continues, and is
    reported (flagged) only if no violation with all counts positive exists.
    """
    checked = 0
    fallback = None
    for source, g in candidate_graphs(cfg):
        checked += 1
        r = check_on_graph(ineq, g)
        if r.holds:
            continue
        if not r.outside_positive_profile:
            return CheckReport(True, checked, g, source, r.lhs, r.rhs, False)
        if fallback is None:
            fallback = (g, source, r.lhs, r.rhs)
    if fallback is not None:
        g, source, lhs, rhs = fallback
        return CheckReport(True, checked, g, source, lhs, rhs, True)
    return CheckReport(False, checked)
