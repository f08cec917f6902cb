"""Homomorphism domination exponents via the Kopparty–Rossman LP.

For chordal ``F1`` and series-parallel ``F2``,

    HDE(F1; F2) = min over normalized F2-polymatroidal p of
                  max over phi in Hom(F1; F2) of
                  sum over nonempty S of cliques  -(-1)^|S| p(phi(cap S)).

Subsets of ``V(F2)`` are bitmasks. The min-max is solved exactly as an
epigraph LP.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .graph import Graph, is_chordal, is_series_parallel, maximal_cliques
from .lp import Status, solve_lp

MAX_F2_VERTICES = 7
MAX_HOMS = 10**6
MAX_CLIQUES = 20


class HdePreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SubsetFunction:
    n: int
    values: tuple[Fraction, ...]  # indexed by bitmask

    def __call__(self, subset) -> Fraction:
        return self.values[subset if isinstance(subset, int) else to_mask(subset)]

    def table(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(from_mask(a), v) for a, v in enumerate(self.values)]


@dataclass(frozen=True)
class HomWeight:
    """Linear functional ``p -> sum coeff[A] p(A)``, stored as sorted pairs."""

    coefficients: tuple[tuple[int, int], ...]

    def evaluate(self, p: SubsetFunction | dict) -> Fraction:
        get = p if callable(p) else p.__getitem__
        return sum((c * get(a) for a, c in self.coefficients), Fraction(0))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)


@dataclass
class HdeResult:
    value: Fraction | None  # None means +infinity (no homomorphisms)
    optimal_p: SubsetFunction | None
    tight_homs: list[tuple[int, ...]] = field(default_factory=list)
    weights: dict[HomWeight, list[tuple[int, ...]]] = field(default_factory=dict)

    @property
    def infinite(self) -> bool:
        return self.value is None


def to_mask(s) -> int:
    out = 0
    for v in s:
        out |= 1 << v
    return out


def from_mask(a: int) -> tuple[int, ...]:
    return tuple(i for i in range(a.bit_length()) if a >> i & 1)


def homomorphisms(f1: Graph, f2: Graph, limit: int = MAX_HOMS) -> Iterator[tuple[int, ...]]:
    """All edge-preserving maps ``V(f1) -> V(f2)`` in lexicographic order."""
    order = list(range(f1.n))
    phi = [0] * f1.n
    count = 0

    def extend(k: int):
        nonlocal count
        if k == f1.n:
            count += 1
            if count > limit:
                raise HdePreconditionError(f"more than {limit} homomorphisms")
            yield tuple(phi)
            return
        v = order[k]
        earlier = [u for u in f1.neighbors(v) if u < v]
        for x in range(f2.n):
            if all(f2.adjacent(phi[u], x) for u in earlier):
                phi[v] = x
                yield from extend(k + 1)

    yield from extend(0)


def clique_coefficients(f1: Graph) -> dict[frozenset[int], int]:
    """Inclusion-exclusion coefficient of each nonempty clique intersection."""
    cliques = maximal_cliques(f1)
    if len(cliques) > MAX_CLIQUES:
        raise HdePreconditionError(f"{len(cliques)} maximal cliques exceeds the limit of {MAX_CLIQUES}")
    coef: dict[frozenset[int], int] = defaultdict(int)
    for k in range(1, len(cliques) + 1):
        sign = 1 if k % 2 else -1
        for combo in itertools.combinations(cliques, k):
            inter = frozenset.intersection(*combo)
            if inter:
                coef[inter] += sign
    return {s: c for s, c in coef.items() if c}


def hom_weight(coef: dict[frozenset[int], int], phi: tuple[int, ...]) -> HomWeight:
    acc: dict[int, int] = defaultdict(int)
    for s, c in coef.items():
        acc[to_mask(phi[v] for v in s)] += c
    return HomWeight(tuple(sorted((a, c) for a, c in acc.items() if c and a)))


def hom_weights(f1: Graph, f2: Graph) -> dict[HomWeight, list[tuple[int, ...]]]:
    """Distinct weight functionals, each with the homomorphisms producing it."""
    coef = clique_coefficients(f1)
    out: dict[HomWeight, list[tuple[int, ...]]] = {}
    for phi in homomorphisms(f1, f2):
        out.setdefault(hom_weight(coef, phi), []).append(phi)
    return out


def separates(f2: Graph, a: int, b: int) -> bool:
    """True when deleting ``a & b`` leaves no path from ``a - b`` to ``b - a``."""
    cut = a & b
    src, dst = a & ~b, b & ~a
    seen = src
    stack = list(from_mask(src))
    while stack:
        v = stack.pop()
        for u in f2.neighbors(v):
            bit = 1 << u
            if bit & cut or bit & seen:
                continue
            if bit & dst:
                return False
            seen |= bit
            stack.append(u)
    return True


@dataclass(frozen=True)
class Constraint:
    """``sum coeff[A] p(A)  (== or >=)  rhs``."""

    coefficients: tuple[tuple[int, int], ...]
    equality: bool
    rhs: int = 0
    kind: str = ""


def _constraint(terms: dict[int, int], equality: bool, rhs: int = 0, kind: str = "") -> Constraint | None:
    clean = tuple(sorted((a, c) for a, c in terms.items() if c))
    if not clean:
        return None
    return Constraint(clean, equality, rhs, kind)


def polymatroid_constraints(f2: Graph) -> list[Constraint]:
    n = f2.n
    if n > MAX_F2_VERTICES:
        raise HdePreconditionError(f"F2 has {n} vertices; at most {MAX_F2_VERTICES} supported")
    full = (1 << n) - 1
    out: list[Constraint] = []
    seen: set = set()

    def add(c: Constraint | None):
        if c is None:
            return
        key = (c.coefficients, c.equality, c.rhs)
        if c.equality:
            neg = (tuple((a, -x) for a, x in c.coefficients), True, -c.rhs)
            if neg in seen:
                return
        if key not in seen:
            seen.add(key)
            out.append(c)

    add(Constraint(((0, 1),), True, 0, "empty"))
    add(Constraint(((full, 1),), True, 1, "normalized"))
    for a in range(full + 1):
        for v in range(n):
            if not a >> v & 1:
                add(_constraint({a | 1 << v: 1, a: -1}, False, kind="monotone"))
        for u, v in itertools.combinations(range(n), 2):
            if a >> u & 1 or a >> v & 1:
                continue
            t: dict[int, int] = defaultdict(int)
            t[a | 1 << u] += 1
            t[a | 1 << v] += 1
            t[a | 1 << u | 1 << v] -= 1
            t[a] -= 1
            add(_constraint(t, False, kind="submodular"))
    for a, b in itertools.combinations(range(full + 1), 2):
        if not (a & ~b) or not (b & ~a):
            continue
        if separates(f2, a, b):
            t = defaultdict(int)
            t[a & b] += 1
            t[a | b] += 1
            t[a] -= 1
            t[b] -= 1
            add(_constraint(t, True, kind="separation"))
    return out


def hde(f1: Graph, f2: Graph, skip_sp_check: bool = False) -> HdeResult:
    if not is_chordal(f1):
        raise HdePreconditionError("F1 must be chordal")
    if not skip_sp_check and not is_series_parallel(f2):
        raise HdePreconditionError("F2 must be series-parallel")
    weights = hom_weights(f1, f2)
    if not weights:
        return HdeResult(None, None, [], weights)
    cons = polymatroid_constraints(f2)

    nsub = 1 << f2.n
    # columns: p(A) for all masks, t+, t-, then one slack per inequality
    ineqs = [c for c in cons if not c.equality]
    wlist = list(weights)
    nslack = len(ineqs) + len(wlist)
    ncols = nsub + 2 + nslack
    A, b = [], []
    slack = nsub + 2
    for c in cons:
        row = [0] * ncols
        for a, x in c.coefficients:
            row[a] += x
        if not c.equality:
            row[slack] = -1
            slack += 1
        A.append(row)
        b.append(c.rhs)
    for w in wlist:
        row = [0] * ncols
        row[nsub], row[nsub + 1] = 1, -1
        for a, x in w.coefficients:
            row[a] -= x
        row[slack] = -1
        slack += 1
        A.append(row)
        b.append(0)
    cost = [0] * ncols
    cost[nsub], cost[nsub + 1] = 1, -1
    res = solve_lp(cost, A, b)
    if res.status is not Status.OPTIMAL:
        raise ArithmeticError(f"HDE LP ended with status {res.status.value}")
    p = SubsetFunction(f2.n, tuple(res.x[:nsub]))
    value = res.value
    tight = sorted(phi for w in wlist if w.evaluate(p) == value for phi in weights[w])
    return HdeResult(value, p, tight, weights)


def check_feasible(f2: Graph, p: SubsetFunction | dict) -> bool:
    get = p if callable(p) else p.__getitem__
    for c in polymatroid_constraints(f2):
        lhs = sum((x * get(a) for a, x in c.coefficients), Fraction(0))
        if (lhs != c.rhs) if c.equality else (lhs < c.rhs):
            return False
    return True


def format_hde(res: HdeResult, f2: Graph) -> str:
    if res.infinite:
        return "HDE = +inf (no homomorphisms F1 -> F2)\n"
    lines = [f"HDE = {res.value}", "optimal p:"]
    for s, v in res.optimal_p.table():
        lines.append(f"  p({{{','.join(map(str, s))}}}) = {v}")
    lines.append(f"tight homomorphisms: {len(res.tight_homs)}")
    lines += ["  " + " ".join(f"{i}->{x}" for i, x in enumerate(phi)) for phi in res.tight_homs]
    return "\n".join(lines) + "\n"
