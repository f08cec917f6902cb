"""Finite simple graphs, the almost-star pattern family, and realizing families.

Vertices are always ``0..n-1``. Graphs are immutable; every operation here
returns a new graph.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Malformed graph data or an invalid family parameter."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [set() for _ in range(self.n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, frozenset())

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_forest(self) -> bool:
        return self.num_edges == self.n - len(self.components())

    def relabel(self, perm: list[int]) -> "Graph":
        """Image of the graph under the vertex bijection ``v -> perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges | {(min(u, v), max(u, v))})


# --- patterns ---------------------------------------------------------------

class PatternKind(enum.Enum):
    SINGLE_VERTEX = "V"
    ALMOST_STAR = "T"


@dataclass(frozen=True)
class Pattern:
    """``SingleVertex`` (S_0) or ``AlmostStar(k)`` (S_{2,1^k})."""

    kind: PatternKind
    k: int = 0

    def __post_init__(self):
        if self.kind is PatternKind.ALMOST_STAR and self.k < 0:
            raise GraphError(f"almost-star branch count must be >= 0, got {self.k}")

    @classmethod
    def vertex(cls) -> "Pattern":
        return cls(PatternKind.SINGLE_VERTEX)

    @classmethod
    def almost_star(cls, k: int) -> "Pattern":
        return cls(PatternKind.ALMOST_STAR, k)

    @property
    def num_vertices(self) -> int:
        return 1 if self.kind is PatternKind.SINGLE_VERTEX else self.k + 3

    @property
    def coordinate(self) -> int:
        """Index of this pattern in a profile vector (S_0 -> 0, S_{2,1^k} -> k+1)."""
        return 0 if self.kind is PatternKind.SINGLE_VERTEX else self.k + 1

    @classmethod
    def from_coordinate(cls, i: int) -> "Pattern":
        return cls.vertex() if i == 0 else cls.almost_star(i - 1)

    def __str__(self):
        return "V" if self.kind is PatternKind.SINGLE_VERTEX else f"T{self.k}"


def materialize_pattern(p: Pattern) -> Graph:
    """Build S_0 or S_{2,1^k}.

    For S_{2,1^k} vertex 0 is the center, vertices ``1..k+1`` are its
    neighbours and vertex ``k+2`` hangs off vertex ``k+1``.
    """
    if p.kind is PatternKind.SINGLE_VERTEX:
        return Graph.empty(1)
    k = p.k
    edges = [(0, j) for j in range(1, k + 2)] + [(k + 1, k + 2)]
    return Graph.from_edges(k + 3, edges)


def star_pattern(i: int) -> Graph:
    """The star with ``i`` branches (``i = 0`` is a single vertex)."""
    return Graph.from_edges(i + 1, ((0, j) for j in range(1, i + 1)))


# --- realizing families -----------------------------------------------------

class FamilyKind(enum.Enum):
    ISOLATED_PLUS_EDGE = "isolated-plus-edge"
    SINGLE_EDGE = "single-edge"
    STAR = "star"
    COMPLETE_BIPARTITE = "complete-bipartite"
    P2_BLOWUP = "p2-blowup"
    MATCHING = "matching"


# family realizing each d-ray; d2 at a growing scale uses a perfect matching
RAY_FAMILY = {
    "d1": FamilyKind.ISOLATED_PLUS_EDGE,
    "d2": FamilyKind.SINGLE_EDGE,
    "d3": FamilyKind.STAR,
    "d4": FamilyKind.COMPLETE_BIPARTITE,
    "d5": FamilyKind.P2_BLOWUP,
}


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: FamilyKind
    n: int = 1

    def __post_init__(self):
        k, n = self.kind, self.n
        if k is FamilyKind.SINGLE_EDGE:
            return
        lo = 3 if k is FamilyKind.ISOLATED_PLUS_EDGE else 1
        if n < lo:
            raise GraphError(f"{k.value} needs n >= {lo}, got {n}")

    @property
    def num_vertices(self) -> int:
        k, n = self.kind, self.n
        return {
            FamilyKind.ISOLATED_PLUS_EDGE: n,
            FamilyKind.SINGLE_EDGE: 2,
            FamilyKind.STAR: n + 1,
            FamilyKind.COMPLETE_BIPARTITE: 2 * n,
            FamilyKind.P2_BLOWUP: 2 * n * n + 1,
            FamilyKind.MATCHING: 2 * n,
        }[k]

    def __str__(self):
        if self.kind is FamilyKind.SINGLE_EDGE:
            return "K2"
        return f"{self.kind.value}({self.n})"


def build_family(d: FamilyDescriptor) -> Graph:
    k, n = d.kind, d.n
    if k is FamilyKind.ISOLATED_PLUS_EDGE:
        return Graph.from_edges(n, [(0, 1)])
    if k is FamilyKind.SINGLE_EDGE:
        return Graph.from_edges(2, [(0, 1)])
    if k is FamilyKind.STAR:
        return star_pattern(n)
    if k is FamilyKind.COMPLETE_BIPARTITE:
        return Graph.from_edges(2 * n, ((a, n + b) for a in range(n) for b in range(n)))
    if k is FamilyKind.MATCHING:
        return Graph.from_edges(2 * n, ((2 * i, 2 * i + 1) for i in range(n)))
    if k is FamilyKind.P2_BLOWUP:
        # A = {0}; B = 1..n^2 indexed by (b1, b2); C = n^2+1..2n^2 by (c1, c2);
        # (b1, b2) ~ (c1, c2) iff b1 == c1
        sq = n * n
        edges = [(0, 1 + b) for b in range(sq)]
        for b1, b2, c2 in itertools.product(range(n), repeat=3):
            edges.append((1 + b1 * n + b2, 1 + sq + b1 * n + c2))
        return Graph.from_edges(2 * sq + 1, edges)
    raise GraphError(f"unknown family {k}")


# --- graph operations -------------------------------------------------------

def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    return Graph.from_edges(g1.n + g2.n, list(g1.edges) + [(u + off, v + off) for u, v in g2.edges])


def tensor_product(g1: Graph, g2: Graph) -> Graph:
    """Categorical product; vertex ``(a, b)`` is numbered ``a * g2.n + b``."""
    m = g2.n
    edges = []
    for a1, a2 in g1.edges:
        for b1, b2 in g2.edges:
            edges.append((a1 * m + b1, a2 * m + b2))
            edges.append((a1 * m + b2, a2 * m + b1))
    return Graph.from_edges(g1.n * m, edges)


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """All inclusion-maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    out: list[frozenset[int]] = []

    def expand(r: set[int], p: set[int], x: set[int]):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(p & g.neighbors(u)))
        for v in sorted(p - g.neighbors(pivot)):
            nv = g.neighbors(v)
            expand(r | {v}, p & nv, x & nv)
            p = p - {v}
            x = x | {v}

    if g.n:
        expand(set(), set(range(g.n)), set())
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def perfect_elimination_order(g: Graph) -> list[int] | None:
    """A perfect elimination ordering, or ``None`` if ``g`` is not chordal.

    Maximum cardinality search gives a candidate order; it is a PEO iff the
    graph is chordal, which is then checked directly.
    """
    weight = [0] * g.n
    numbered = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True
        order.append(v)
        for w in g.neighbors(v):
            if not numbered[w]:
                weight[w] += 1
    peo = order[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        if any(w != parent and not g.adjacent(parent, w) for w in later):
            return None
    return peo


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_order(g) is not None


def is_series_parallel(g: Graph) -> bool:
    """True iff ``g`` has no K_4 minor (treewidth at most 2).

    Repeatedly deletes vertices of degree <= 1 and suppresses vertices of
    degree 2 (joining their neighbours); the graph has treewidth <= 2 iff
    this empties it.
    """
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    changed = True
    while adj and changed:
        changed = False
        for v in sorted(adj):
            if v not in adj:
                continue
            nb = adj[v]
            if len(nb) <= 1:
                for w in nb:
                    adj[w].discard(v)
                del adj[v]
                changed = True
            elif len(nb) == 2:
                a, b = nb
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    return not adj


# --- text format ------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: first line ``n``, then ``u v`` lines."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line))
    if not lines:
        raise GraphError("empty graph file")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise GraphError(f"line {lineno}: expected vertex count, got {first!r}") from None
    seen = set()
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < v < n):
            raise GraphError(f"line {lineno}: need 0 <= u < v < {n}, got {u} {v}")
        if (u, v) in seen:
            raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
    return Graph(n, frozenset(seen))


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def format_graph(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]) + "\n"


def iter_all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))
