"""Exact homomorphism counts and profile vectors.

Counts are Python ints throughout. Floats only appear in
:func:`log_ratio_vector`, which is a diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .graph import FamilyDescriptor, FamilyKind, Graph, Pattern, materialize_pattern

DEFAULT_BUDGET = 10**8


class HomBudgetError(RuntimeError):
    """The brute-force enumeration would exceed its mapping budget."""


class NotAForestError(ValueError):
    pass


def hom_brute(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Count homomorphisms ``h -> g`` by exhaustive search over vertex maps.

    Vertices of ``h`` are assigned in index order and a partial map is
    abandoned as soon as an edge between assigned vertices is not preserved.
    The search space is bounded by ``g.n ** h.n``, which must fit in ``budget``.
    """
    if g.n ** h.n > budget:
        raise HomBudgetError(f"{g.n}^{h.n} mappings exceed budget {budget}")
    back = [[u for u in h.neighbors(v) if u < v] for v in range(h.n)]
    phi = [0] * h.n

    def extend(v: int) -> int:
        if v == h.n:
            return 1
        total = 0
        for x in range(g.n):
            if all(g.adjacent(phi[u], x) for u in back[v]):
                phi[v] = x
                total += extend(v + 1)
        return total

    return extend(0)


def hom_tree(t: Graph, g: Graph) -> int:
    """Count homomorphisms from a forest ``t`` into ``g`` by dynamic programming.

    Each component is rooted at its smallest vertex. For a tree vertex ``a``
    and target vertex ``x``, ``f[a][x]`` is the number of maps of the subtree
    below ``a`` that send ``a`` to ``x``; it is the product over children of
    the sum of the child's table over the neighbours of ``x``.
    """
    if not t.is_forest():
        raise NotAForestError("hom_tree needs an acyclic pattern")
    total = 1
    for comp in t.components():
        total *= _hom_rooted(t, comp[0], g)
        if total == 0:
            return 0
    return total


def _hom_rooted(t: Graph, root: int, g: Graph) -> int:
    order, parent = [], {root: None}
    stack = [root]
    while stack:
        a = stack.pop()
        order.append(a)
        for b in sorted(t.neighbors(a)):
            if b not in parent:
                parent[b] = a
                stack.append(b)
    tables: dict[int, list[int]] = {}
    nbrs = [sorted(g.neighbors(x)) for x in range(g.n)]
    for a in reversed(order):
        f = [1] * g.n
        for b in t.neighbors(a):
            if parent.get(b) != a:
                continue
            fb = tables.pop(b)
            # sum of child table over each target neighbourhood
            f = [f[x] * sum(fb[y] for y in nbrs[x]) if f[x] else 0 for x in range(g.n)]
        tables[a] = f
    return sum(tables[root])


@dataclass(frozen=True)
class ProfileVector:
    """``counts[0] = hom(S_0; G)``, ``counts[i] = hom(S_{2,1^{i-1}}; G)``."""

    m: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.m + 1:
            raise ValueError(f"profile for m={self.m} needs {self.m + 1} entries")

    # disjoint union adds, tensor product multiplies (all patterns connected)
    def __add__(self, other: "ProfileVector") -> "ProfileVector":
        _same_m(self, other)
        return ProfileVector(self.m, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __mul__(self, other: "ProfileVector") -> "ProfileVector":
        _same_m(self, other)
        return ProfileVector(self.m, tuple(a * b for a, b in zip(self.counts, other.counts)))

    def __pow__(self, e: int) -> "ProfileVector":
        if e < 1:
            raise ValueError("tensor power must be >= 1")
        return ProfileVector(self.m, tuple(a**e for a in self.counts))

    def scale(self, c: int) -> "ProfileVector":
        """Profile of ``c`` disjoint copies."""
        return ProfileVector(self.m, tuple(c * a for a in self.counts))

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __iter__(self):
        return iter(self.counts)


def _same_m(a: ProfileVector, b: ProfileVector):
    if a.m != b.m:
        raise ValueError(f"profile sizes differ: {a.m} vs {b.m}")


def profile_vector(m: int, g: Graph) -> ProfileVector:
    if m < 1:
        raise ValueError("m must be >= 1")
    counts = [g.n] + [hom_tree(materialize_pattern(Pattern.almost_star(k)), g) for k in range(m)]
    return ProfileVector(m, tuple(counts))


def almost_star_counts(g: Graph, m: int) -> ProfileVector:
    """Same as :func:`profile_vector` via the degree identity.

    Sending the centre of S_{2,1^k} to ``v`` leaves ``deg(v)^k`` choices for
    the short branches and ``sum_{u ~ v} deg(u)`` for the long one.
    """
    deg = g.degrees()
    nsum = [sum(deg[u] for u in g.neighbors(v)) for v in range(g.n)]
    counts = [g.n] + [sum(d**k * s for d, s in zip(deg, nsum)) for k in range(m)]
    return ProfileVector(m, tuple(counts))


def star_counts(g: Graph, m: int) -> ProfileVector:
    """Star profile: entry ``i`` is hom(S_i; G), i.e. ``n`` then ``sum deg^i``."""
    deg = g.degrees()
    return ProfileVector(m, (g.n,) + tuple(sum(d**i for d in deg) for i in range(1, m + 1)))


# --- closed-form profiles via equitable partitions --------------------------

@dataclass(frozen=True)
class EquitablePartition:
    """Vertex classes with uniform neighbour counts.

    ``sizes[p]`` is the class size and ``links[p][q]`` the number of
    neighbours in class ``q`` of any vertex in class ``p``.
    """

    sizes: tuple[int, ...]
    links: tuple[tuple[int, ...], ...]

    def profile(self, m: int) -> ProfileVector:
        k = len(self.sizes)
        deg = [sum(self.links[p]) for p in range(k)]
        nsum = [sum(self.links[p][q] * deg[q] for q in range(k)) for p in range(k)]
        counts = [sum(self.sizes)]
        for j in range(m):
            counts.append(sum(self.sizes[p] * deg[p] ** j * nsum[p] for p in range(k)))
        return ProfileVector(m, tuple(counts))


def family_partition(d: FamilyDescriptor) -> EquitablePartition:
    k, n = d.kind, d.n
    if k is FamilyKind.ISOLATED_PLUS_EDGE:
        return EquitablePartition((n - 2, 2), ((0, 0), (0, 1)))
    if k is FamilyKind.SINGLE_EDGE:
        return EquitablePartition((2,), ((1,),))
    if k is FamilyKind.MATCHING:
        return EquitablePartition((2 * n,), ((1,),))
    if k is FamilyKind.STAR:
        return EquitablePartition((1, n), ((0, n), (1, 0)))
    if k is FamilyKind.COMPLETE_BIPARTITE:
        return EquitablePartition((n, n), ((0, n), (n, 0)))
    if k is FamilyKind.P2_BLOWUP:
        sq = n * n
        return EquitablePartition((1, sq, sq), ((0, sq, 0), (1, 0, n), (0, n, 0)))
    raise ValueError(f"unknown family {k}")


def family_profile(d: FamilyDescriptor, m: int) -> ProfileVector:
    """Profile of ``build_family(d)`` without materializing the graph."""
    return family_partition(d).profile(m)


def log_ratio_vector(pv: ProfileVector | Sequence[int], base_n: int) -> list[float]:
    counts = pv.counts if isinstance(pv, ProfileVector) else tuple(pv)
    if base_n < 2:
        raise ValueError("base_n must be >= 2")
    if any(c <= 0 for c in counts):
        raise ValueError("log ratio undefined for a zero count")
    ln = math.log(base_n)
    return [math.log(c) / ln for c in counts]
