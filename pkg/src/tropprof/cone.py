"""Rational polyhedral cones ``{y : a_r . y >= 0}``: rays, membership, duality.

Every scalar is an exact ``Fraction`` or ``int``. Algorithms process rows in
a canonical order so results do not depend on how the rows were listed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import dot, nullspace, primitive, rank, solve
from .lp import Status, solve_lp


class ConeError(ValueError):
    pass


class NonPointedConeError(ConeError):
    def __init__(self, lineality: list[tuple[Fraction, ...]]):
        self.lineality = lineality
        super().__init__(f"cone is not pointed; lineality space has dimension {len(lineality)}")


@dataclass(frozen=True, order=True)
class Ray:
    """Cone direction scaled to coprime integers (positive scaling only)."""

    direction: tuple[int, ...]

    @classmethod
    def of(cls, v: Sequence) -> "Ray":
        if not any(v):
            raise ConeError("zero vector is not a ray")
        return cls(primitive(v))

    def __len__(self):
        return len(self.direction)

    def __iter__(self):
        return iter(self.direction)

    def __getitem__(self, i):
        return self.direction[i]

    def __str__(self):
        return " ".join(map(str, self.direction))


@dataclass(frozen=True)
class HCone:
    dim: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        seen, rows = set(), []
        for r in self.rows:
            r = tuple(Fraction(x) for x in r)
            if len(r) != self.dim:
                raise ConeError(f"row of length {len(r)} in a cone of dimension {self.dim}")
            if not any(r):
                raise ConeError("all-zero row")
            if r not in seen:
                seen.add(r)
                rows.append(r)
        object.__setattr__(self, "rows", tuple(rows))

    @classmethod
    def from_rows(cls, dim: int, rows: Iterable[Sequence]) -> "HCone":
        return cls(dim, tuple(tuple(r) for r in rows))

    def canonical_order(self) -> list[int]:
        """Row indices sorted by (number of nonzeros, entries)."""
        return sorted(range(len(self.rows)), key=lambda i: (sum(1 for x in self.rows[i] if x), self.rows[i]))

    def lineality(self) -> list[tuple[Fraction, ...]]:
        return nullspace(self.rows, self.dim)


@dataclass(frozen=True)
class DualWitness:
    """Either nonnegative row multipliers or a Farkas ray, never both."""

    multipliers: tuple[Fraction, ...] | None = None
    farkas_ray: Ray | None = None

    @property
    def in_dual(self) -> bool:
        return self.multipliers is not None


def contains(c: HCone, point: Sequence) -> bool:
    if len(point) != c.dim:
        raise ConeError(f"point has length {len(point)}, cone dimension is {c.dim}")
    return all(dot(r, point) >= 0 for r in c.rows)


def tight_rows(c: HCone, point: Sequence) -> list[int]:
    return [i for i, r in enumerate(c.rows) if dot(r, point) == 0]


def verify_extreme(c: HCone, r: Ray | Sequence) -> bool:
    v = tuple(r)
    if not any(v) or not contains(c, v):
        return False
    return rank([c.rows[i] for i in tight_rows(c, v)]) == c.dim - 1


def extreme_rays(c: HCone) -> list[Ray]:
    """Extreme rays by the double description method.

    An initial simplicial cone is cut out by ``dim`` independent rows; the
    remaining rows are then added one at a time, combining each adjacent
    (positive, negative) pair of current rays into a new ray on the
    hyperplane. Two rays count as adjacent when the rows tight at both have
    rank ``dim - 2``.
    """
    d = c.dim
    order = c.canonical_order()
    rows = [primitive(c.rows[i]) for i in order]

    basis: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
        if len(basis) == d:
            break
    if len(basis) < d:
        raise NonPointedConeError(c.lineality())

    bmat = [rows[i] for i in basis]
    rays: list[tuple[tuple[int, ...], frozenset[int]]] = []
    for k in range(d):
        y = solve(bmat, [int(j == k) for j in range(d)])
        rays.append((primitive(y), frozenset(basis[j] for j in range(d) if j != k)))

    for i in (i for i in range(len(rows)) if i not in basis):
        a = rows[i]
        vals = [sum(x * y for x, y in zip(a, v)) for v, _ in rays]
        pos = [k for k, s in enumerate(vals) if s > 0]
        neg = [k for k, s in enumerate(vals) if s < 0]
        new = [(v, z | {i}) if vals[k] == 0 else (v, z) for k, (v, z) in enumerate(rays) if vals[k] >= 0]
        for p in pos:
            vp, zp = rays[p]
            for q in neg:
                vq, zq = rays[q]
                common = zp & zq
                if len(common) < d - 2 or rank([rows[j] for j in common]) != d - 2:
                    continue
                w = [vals[p] * y - vals[q] * x for x, y in zip(vp, vq)]
                new.append((primitive(w), common | {i}))
        rays = new
    return sorted({Ray(v) for v, _ in rays})


def dual_membership(c: HCone, functional: Sequence) -> DualWitness:
    """Decide whether ``functional`` is a nonnegative combination of the rows.

    Phase 1 of the simplex method on ``A^T lam = functional, lam >= 0``. If
    that is infeasible, a second LP minimizes ``functional . y`` over the
    cone sliced by ``w . y = 1`` (``w`` the row sum, positive on a pointed
    cone); its optimal vertex is an extreme ray on which the functional is
    most negative relative to ``w``.
    """
    f = tuple(Fraction(x) for x in functional)
    if len(f) != c.dim:
        raise ConeError(f"functional has length {len(f)}, cone dimension is {c.dim}")
    order = c.canonical_order()
    nrows = len(order)

    at = [[c.rows[order[j]][k] for j in range(nrows)] for k in range(c.dim)]
    res = solve_lp([0] * nrows, at, f)
    if res.status is Status.OPTIMAL:
        lam = [Fraction(0)] * nrows
        for j, i in enumerate(order):
            lam[i] = res.x[j]
        return DualWitness(multipliers=tuple(lam))

    return DualWitness(farkas_ray=_farkas_ray(c, f, order))


def _farkas_ray(c: HCone, f: tuple[Fraction, ...], order: list[int]) -> Ray:
    d = c.dim
    for v in c.lineality():
        s = dot(f, v)
        if s != 0:
            return Ray.of([-x for x in v] if s > 0 else v)
    rows = [c.rows[i] for i in order]
    w = [sum((r[k] for r in rows), Fraction(0)) for k in range(d)]
    # variables: y+ (d), y- (d), slack s (one per row)
    nr = len(rows)
    A, b = [], []
    for j, r in enumerate(rows):
        A.append(list(r) + [-x for x in r] + [Fraction(-int(k == j)) for k in range(nr)])
        b.append(0)
    A.append(list(w) + [-x for x in w] + [0] * nr)
    b.append(1)
    cost = list(f) + [-x for x in f] + [0] * nr
    res = solve_lp(cost, A, b)
    if res.status is not Status.OPTIMAL or res.value >= 0:
        raise ConeError("functional is outside the dual cone but no Farkas ray was found")
    y = [res.x[k] - res.x[d + k] for k in range(d)]
    return Ray.of(y)


def certificate_residual(c: HCone, multipliers: Sequence, functional: Sequence) -> tuple[Fraction, ...]:
    """``sum lam_r a_r - functional``; all zeros for a valid certificate."""
    return tuple(
        sum((Fraction(l) * r[k] for l, r in zip(multipliers, c.rows)), Fraction(0)) - Fraction(functional[k])
        for k in range(c.dim)
    )


def check_witness(c: HCone, functional: Sequence, w: DualWitness) -> bool:
    """Re-verify a witness with independent exact arithmetic."""
    if w.multipliers is not None:
        return all(l >= 0 for l in w.multipliers) and not any(certificate_residual(c, w.multipliers, functional))
    return contains(c, w.farkas_ray.direction) and dot(functional, w.farkas_ray.direction) < 0


def format_cone(c: HCone) -> str:
    lines = [f"dim {c.dim}", f"rows {len(c.rows)}"]
    lines += [" ".join(map(str, r)) for r in c.rows]
    return "\n".join(lines) + "\n"


def format_rays(rays: Iterable[Ray]) -> str:
    return "".join(f"{r}\n" for r in rays)
