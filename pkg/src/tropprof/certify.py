"""Decide pure binomial inequalities in almost-star homomorphism numbers.

An inequality ``prod hom^alpha >= prod hom^beta`` holds on every graph iff
``(alpha - beta) . y >= 0`` on Q(m). The certifier asks the cone engine for
either nonnegative row multipliers (a certificate) or a ray of Q(m) on which
the functional is negative; in the latter case it can also build an
explicit graph that violates the inequality.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cone import DualWitness, Ray, certificate_residual, contains, dual_membership, extreme_rays
from .graph import (FamilyDescriptor, FamilyKind, Graph, Pattern, PatternKind, build_family,
                    disjoint_union, tensor_product)
from .homcount import ProfileVector, almost_star_counts, family_profile
from .linalg import dot
from .tropical import (QCone, RayFamilyId, TropicalDecomposition, build_Q, build_star_cone,
                       decomposition, enumerate_expected_rays)

ALMOST_STAR = "almost-star"
STAR = "star"


class InequalityError(ValueError):
    pass


class ParseError(InequalityError):
    def __init__(self, message: str, token: str, position: int):
        self.token = token
        self.position = position
        super().__init__(f"{message}: {token!r} at position {position}")


# --- inequalities ------------------------------------------------------------

@dataclass(frozen=True)
class BinomialInequality:
    """``prod_i x_i^alpha_i >= prod_i x_i^beta_i`` over profile coordinates.

    Coordinate 0 is S_0. For the almost-star family coordinate ``j >= 1`` is
    S_{2,1^{j-1}}; for the star family it is the star with ``j`` branches.
    """

    m: int
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    family: str = ALMOST_STAR

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.alpha)
        b = tuple(Fraction(x) for x in self.beta)
        if len(a) != self.m + 1 or len(b) != self.m + 1:
            raise InequalityError(f"exponent vectors must have length m+1 = {self.m + 1}")
        if any(x < 0 for x in a + b):
            raise InequalityError("exponents must be nonnegative")
        if not any(a) and not any(b):
            raise InequalityError("both sides are empty")
        if self.family not in (ALMOST_STAR, STAR):
            raise InequalityError(f"unknown family {self.family!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def functional(self) -> tuple[Fraction, ...]:
        return tuple(x - y for x, y in zip(self.alpha, self.beta))

    def reversed(self) -> "BinomialInequality":
        return BinomialInequality(self.m, self.beta, self.alpha, self.family)

    @classmethod
    def from_functional(cls, m: int, c: Sequence, family: str = ALMOST_STAR) -> "BinomialInequality":
        c = [Fraction(x) for x in c]
        return cls(m, tuple(max(x, 0) for x in c), tuple(max(-x, 0) for x in c), family)

    def exponent_lcm(self) -> int:
        return math.lcm(*(x.denominator for x in self.alpha + self.beta))

    def __str__(self):
        return format_inequality(self)


def atom_name(j: int, family: str = ALMOST_STAR) -> str:
    if j == 0:
        return "V"
    return f"T{j - 1}" if family == ALMOST_STAR else f"S{j}"


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_side(exps: Sequence[Fraction], family: str = ALMOST_STAR) -> str:
    terms = []
    for j, e in enumerate(exps):
        if e == 0:
            continue
        name = atom_name(j, family)
        terms.append(name if e == 1 else f"{name}^{format_rational(e)}")
    return " ".join(terms) if terms else "V^0"


def format_inequality(ineq: BinomialInequality) -> str:
    return f"{format_side(ineq.alpha, ineq.family)} >= {format_side(ineq.beta, ineq.family)}"


_TOKEN = re.compile(r"\S+")
_TERM = re.compile(r"(V|T(\d+)|S(\d+))(?:\^(\d+(?:/\d+)?))?$")


def _parse_terms(text: str, family: str) -> list[tuple[str, int, Fraction, int, str]]:
    """Split an inequality into (side, coordinate, exponent, position, token)."""
    if text.count(">=") != 1:
        pos = text.find(">=", text.find(">=") + 1) if ">=" in text else len(text)
        raise ParseError("expected exactly one '>='", text[pos:pos + 2] or "<end>", pos)
    out, side = [], "lhs"
    for mt in _TOKEN.finditer(text):
        tok, pos = mt.group(), mt.start()
        if tok == ">=":
            side = "rhs"
            continue
        tm = _TERM.match(tok)
        if not tm:
            raise ParseError("malformed term", tok, pos)
        if tm.group(1) == "V":
            j = 0
        elif tm.group(2) is not None:
            if family != ALMOST_STAR:
                raise ParseError("T atoms are not available for the star family", tok, pos)
            j = int(tm.group(2)) + 1
        else:
            if family != STAR:
                raise ParseError("S atoms need the star family", tok, pos)
            j = int(tm.group(3))
            if j == 0:
                raise ParseError("S0 is written V", tok, pos)
        e = tm.group(4)
        if e is not None and "/" in e and int(e.split("/")[1]) == 0:
            raise ParseError("zero denominator", tok, pos)
        out.append((side, j, Fraction(e) if e else Fraction(1), pos, tok))
    sides = {s for s, *_ in out}
    if "lhs" not in sides:
        raise ParseError("empty left-hand side", ">=", text.find(">="))
    if "rhs" not in sides:
        raise ParseError("empty right-hand side", "<end>", len(text))
    return out


def parse_inequality(text: str, m: int | None = None, family: str = ALMOST_STAR) -> BinomialInequality:
    """Parse e.g. ``"V^1 T2 >= T0^2"``; repeated atoms on one side add up."""
    terms = _parse_terms(text, family)
    top = max(j for _, j, *_ in terms)
    if m is None:
        m = max(top, 5 if family == ALMOST_STAR else 2)
    for _, j, _, pos, tok in terms:
        if j > m:
            raise ParseError(f"atom outside the family for m={m}", tok, pos)
    alpha = [Fraction(0)] * (m + 1)
    beta = [Fraction(0)] * (m + 1)
    for side, j, e, _, _ in terms:
        (alpha if side == "lhs" else beta)[j] += e
    return BinomialInequality(m, tuple(alpha), tuple(beta), family)


@dataclass(frozen=True)
class DensityInequality:
    """``prod t(H;G)^e >= prod t(H;G)^e`` over almost-star patterns."""

    lhs: tuple[tuple[Pattern, Fraction], ...]
    rhs: tuple[tuple[Pattern, Fraction], ...]

    def __str__(self):
        def side(terms):
            return " ".join(str(p) if e == 1 else f"{p}^{format_rational(e)}" for p, e in terms) or "V^0"
        return f"t: {side(self.lhs)} >= {side(self.rhs)}"


def parse_density(text: str) -> DensityInequality:
    lhs, rhs = [], []
    for side, j, e, _, _ in _parse_terms(text, ALMOST_STAR):
        (lhs if side == "lhs" else rhs).append((Pattern.from_coordinate(j), e))
    return DensityInequality(tuple(lhs), tuple(rhs))


def densify_to_numbers(d: DensityInequality, m: int) -> BinomialInequality:
    """Clear the ``|V(G)|^{|V(H)|}`` denominators of a density inequality.

    With ``gap = sum |V(H)| e`` over the right side minus the same over the
    left, the left side picks up ``hom(S_0)^gap`` when ``gap >= 0`` and the
    right side picks up ``hom(S_0)^(-gap)`` otherwise.
    """
    alpha = [Fraction(0)] * (m + 1)
    beta = [Fraction(0)] * (m + 1)
    for p, e in d.lhs:
        if p.coordinate > m:
            raise InequalityError(f"pattern {p} outside the family for m={m}")
        alpha[p.coordinate] += e
    for p, e in d.rhs:
        if p.coordinate > m:
            raise InequalityError(f"pattern {p} outside the family for m={m}")
        beta[p.coordinate] += e
    gap = sum(p.num_vertices * e for p, e in d.rhs) - sum(p.num_vertices * e for p, e in d.lhs)
    if gap >= 0:
        alpha[0] += gap
    else:
        beta[0] -= gap
    return BinomialInequality(m, tuple(alpha), tuple(beta))


# --- evaluation --------------------------------------------------------------

def side_values(ineq: BinomialInequality, counts: Sequence[int]) -> tuple[int, int]:
    """Both sides raised to the lcm of the exponent denominators (0^0 = 1)."""
    L = ineq.exponent_lcm()
    lhs, rhs = 1, 1
    for x, a, b in zip(counts, ineq.alpha, ineq.beta):
        lhs *= x ** int(a * L)
        rhs *= x ** int(b * L)
    return lhs, rhs


def violates(ineq: BinomialInequality, counts: Sequence[int]) -> bool:
    """Exact test of ``lhs < rhs``, cancelling shared factors first."""
    if any(x == 0 for x in counts):
        lhs, rhs = side_values(ineq, counts)
        return lhs < rhs
    L = ineq.exponent_lcm()
    lhs, rhs = 1, 1
    for x, c in zip(counts, ineq.functional):
        e = int(c * L)
        if e > 0:
            lhs *= x**e
        elif e < 0:
            rhs *= x ** (-e)
    return lhs < rhs


# --- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    multipliers: tuple[Fraction, ...]
    labels: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    family: str = ALMOST_STAR

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.multipliers) if x]

    def rendered_inequalities(self) -> list[str]:
        m = len(self.rows[0]) - 1 if self.rows else 0
        return [format_inequality(BinomialInequality.from_functional(m, r, self.family)) for r in self.rows]

    def lines(self) -> list[str]:
        rendered = self.rendered_inequalities()
        return [f"{format_rational(self.multipliers[i])} × ({linear_form(self.rows[i])} ≥ 0)"
                f"    [{self.labels[i]}: {rendered[i]}]" for i in self.support()]


def linear_form(row: Sequence) -> str:
    parts = []
    for j, a in enumerate(row):
        a = Fraction(a)
        if a == 0:
            continue
        mag = abs(a)
        coef = "" if mag == 1 else format_rational(mag)
        if not parts:
            parts.append(("−" if a < 0 else "") + f"{coef}y{j}")
        else:
            parts.append(("− " if a < 0 else "+ ") + f"{coef}y{j}")
    return " ".join(parts) if parts else "0"


@dataclass
class Counterexample:
    """A graph built from family graphs at size ``n`` with tensor exponent ``l``.

    ``profile`` holds its exact hom counts (computed through the additivity
    and multiplicativity of hom under disjoint union and tensor product);
    ``graph`` is filled in only when the graph is small enough to list.
    """

    n: int
    l: int
    description: str
    num_vertices: int
    profile: ProfileVector
    lhs: int
    rhs: int
    graph: Graph | None = None


@dataclass
class Refutation:
    violating_ray: Ray
    ray_id: RayFamilyId | None
    farkas_ray: Ray
    construction: TropicalDecomposition | None
    counterexample: Counterexample | None = None
    asymptotic_only: bool = False


@dataclass
class Valid:
    inequality: BinomialInequality
    certificate: Certificate

    is_valid = True


@dataclass
class Invalid:
    inequality: BinomialInequality
    refutation: Refutation

    is_valid = False


@dataclass(frozen=True)
class SearchBudget:
    max_n: int = 200
    max_l: int = 3
    max_graph_vertices: int = 2000
    ray_candidates: int = 8


def cone_for(ineq: BinomialInequality) -> QCone:
    return build_Q(ineq.m) if ineq.family == ALMOST_STAR else build_star_cone(ineq.m)


def certify(ineq: BinomialInequality, counterexample: bool = False,
            budget: SearchBudget = SearchBudget()) -> Valid | Invalid:
    q = cone_for(ineq)
    c = ineq.functional
    if not any(c):
        zero = tuple(Fraction(0) for _ in q.rows)
        return Valid(ineq, Certificate(zero, q.labels, q.rows, ineq.family))

    w = dual_membership(q.cone, c)
    if w.in_dual:
        if any(certificate_residual(q.cone, w.multipliers, c)) or any(x < 0 for x in w.multipliers):
            raise AssertionError("certificate failed re-verification")
        return Valid(ineq, Certificate(w.multipliers, q.labels, q.rows, ineq.family))

    farkas = w.farkas_ray
    if not contains(q.cone, farkas.direction) or dot(c, farkas.direction) >= 0:
        raise AssertionError("Farkas ray failed re-verification")
    candidates = violating_rays(ineq, q, farkas)
    ray0, rid0 = candidates[0]
    ref = Refutation(ray0, rid0, farkas, decomposition(rid0, ineq.m) if rid0 else None)
    if counterexample and ineq.family == ALMOST_STAR:
        for r, rid in candidates[: budget.ray_candidates]:
            cx = counterexample_graph(ineq, rid, budget)
            if cx is not None:
                ref.violating_ray, ref.ray_id = r, rid
                ref.construction = decomposition(rid, ineq.m)
                ref.counterexample = cx
                break
        else:
            ref.asymptotic_only = True
    return Invalid(ineq, ref)


def violating_rays(ineq: BinomialInequality, q: QCone, farkas: Ray) -> list[tuple[Ray, RayFamilyId | None]]:
    """Extreme rays with a negative functional value, the Farkas ray's first.

    For Q(m) the rays carry their family ids and are otherwise listed in
    family order, so d-rays (single-family constructions) come early.
    """
    c = ineq.functional
    if ineq.family == ALMOST_STAR:
        known = list(enumerate_expected_rays(ineq.m).items())
    else:
        known = [(r, None) for r in extreme_rays(q.cone)]
    bad = [(r, rid) for r, rid in known if dot(c, r.direction) < 0]
    first = [x for x in bad if x[0] == farkas]
    rest = [x for x in bad if x[0] != farkas]
    if not first:
        first = [(farkas, None)]
    return first + rest


# --- counterexample construction ---------------------------------------------

# family realizing each d-ray at base n (all coordinates scale like n^ray)
_SCALED_FAMILY = {
    "d1": FamilyKind.ISOLATED_PLUS_EDGE,
    "d2": FamilyKind.MATCHING,
    "d3": FamilyKind.STAR,
    "d4": FamilyKind.COMPLETE_BIPARTITE,
    "d5": FamilyKind.P2_BLOWUP,
}


def _term_parts(term, n: int) -> list[tuple[FamilyDescriptor, int]]:
    return [(FamilyDescriptor(_SCALED_FAMILY[f], n), c) for f, c in term]


def construction_profile(dec: TropicalDecomposition, m: int, n: int, l: int) -> tuple[ProfileVector, int]:
    """Exact profile and vertex count of the graph realizing ``dec`` at (n, l)."""
    total, verts = None, 0
    for term in dec.terms:
        pv, nv = None, 1
        for desc, c in _term_parts(term, n):
            fp = family_profile(desc, m) ** c
            pv = fp if pv is None else pv * fp
            nv *= desc.num_vertices ** c
        pv = pv**l
        total = pv if total is None else total + pv
        verts += nv**l
    return total, verts


def construction_graph(dec: TropicalDecomposition, n: int, l: int) -> Graph:
    g = Graph.empty(0)
    for term in dec.terms:
        t = None
        for desc, c in _term_parts(term, n):
            base = build_family(desc)
            for _ in range(c):
                t = base if t is None else tensor_product(t, base)
        tl = t
        for _ in range(l - 1):
            tl = tensor_product(tl, t)
        g = disjoint_union(g, tl)
    return g


def describe_construction(dec: TropicalDecomposition, n: int, l: int) -> str:
    def term(t):
        parts = _term_parts(t, n)
        fs = " x ".join(f"{desc}^x{c}" if c > 1 else str(desc) for desc, c in parts)
        if l == 1:
            return fs
        return f"({fs})^x{l}" if len(parts) > 1 or parts[0][1] > 1 else f"{fs}^x{l}"
    return " ⊔ ".join(term(t) for t in dec.terms)


def counterexample_graph(ineq: BinomialInequality, rid: RayFamilyId | None,
                         budget: SearchBudget = SearchBudget()) -> Counterexample | None:
    """Search ``(n, l)`` in lexicographic order for an exact violation.

    The graph for the ray's decomposition at ``(n, l)`` is the disjoint
    union over decomposition terms of the ``l``-th tensor power of the
    tensor product of the d-family graphs at size ``n``. Returns ``None``
    if nothing up to ``budget.max_n`` works.
    """
    if rid is None:
        return None
    m = ineq.m
    dec = decomposition(rid, m)
    n_min = 3 if any(f == "d1" for t in dec.terms for f, _ in t) else 1
    for n in range(n_min, budget.max_n + 1):
        for l in range(1, budget.max_l + 1):
            pv, nv = construction_profile(dec, m, n, l)
            if not violates(ineq, pv.counts):
                continue
            lhs, rhs = side_values(ineq, pv.counts)
            g = None
            if nv <= budget.max_graph_vertices:
                g = construction_graph(dec, n, l)
                if almost_star_counts(g, m) != pv:
                    raise AssertionError("materialized counterexample disagrees with its profile")
            return Counterexample(n, l, describe_construction(dec, n, l), nv, pv, lhs, rhs, g)
    return None
