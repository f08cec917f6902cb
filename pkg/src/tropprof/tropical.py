"""The cone Q(m), the star cone, and the explicit ray families of Q(m).

Coordinates are ``y_0 = log hom(S_0)`` and ``y_j = log hom(S_{2,1^{j-1}})``
for ``1 <= j <= m``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import HCone, Ray

D_FAMILIES = ("d1", "d2", "d3", "d4", "d5")
S_FAMILIES = ("s1", "s2", "s3", "s4")
R_FAMILIES = ("r1", "r2", "r3", "r4", "r5", "r6")
# smallest admissible branch index; the largest is always m - 1
R_MIN_INDEX = {"r1": 5, "r2": 5, "r3": 5, "r4": 5, "r5": 3, "r6": 4}


class UnsupportedParameterError(ValueError):
    pass


# --- cones -------------------------------------------------------------------

@dataclass(frozen=True)
class LabelledRow:
    label: str
    coeffs: dict[int, int]

    def dense(self, dim: int) -> tuple[int, ...]:
        v = [0] * dim
        for k, a in self.coeffs.items():
            v[k] += a
        return tuple(v)


@dataclass(frozen=True)
class QCone:
    m: int
    cone: HCone
    labels: tuple[str, ...]
    unverified: bool = False

    @property
    def rows(self):
        return self.cone.rows

    def label(self, i: int) -> str:
        return self.labels[i]


def _assemble(m: int, spec: list[LabelledRow], unverified: bool = False) -> QCone:
    dim = m + 1
    rows, labels, seen = [], [], set()
    for r in spec:
        v = r.dense(dim)
        if not any(v) or v in seen:
            continue
        seen.add(v)
        rows.append(v)
        labels.append(r.label)
    return QCone(m, HCone.from_rows(dim, rows), tuple(labels), unverified)


def q_rows(m: int) -> list[LabelledRow]:
    rows = [
        LabelledRow("A", {1: -1, 2: 1}),
        LabelledRow("B", {1: 4, 2: -3}),
        LabelledRow("C", {1: 3, 3: -3, 4: 1}),
        LabelledRow("D", {1: 1, m - 1: 2, m: -2}),
        LabelledRow("E", {0: 1, m - 1: 1, m: -1}),
        LabelledRow("F", {0: 1, 1: -2, 3: 1}),
    ]
    rows += [LabelledRow(f"G{i}", {i - 1: 1, i: -2, i + 1: 1}) for i in range(2, m)]
    rows.append(LabelledRow("H", {m - 1: m, m: -(m - 1)}))
    return rows


def build_Q(m: int, unverified: bool = False) -> QCone:
    """The cone Q(m) in ``R^{m+1}`` with its ``m + 5`` rows in fixed order.

    ``m < 5`` is refused unless ``unverified`` is set, in which case the
    rows are transcribed literally (``m = 4`` is the smallest value for which
    every referenced coordinate exists) and exact duplicates are dropped.
    """
    if m < 5:
        if not unverified:
            raise UnsupportedParameterError(f"Q(m) is only supported for m >= 5 (got {m})")
        if m < 4:
            raise UnsupportedParameterError(f"rows of Q(m) reference y_4, which needs m >= 4 (got {m})")
    return _assemble(m, q_rows(m), unverified=m < 5)


def star_rows(m: int) -> list[LabelledRow]:
    rows = [
        LabelledRow("A", {1: -1, 2: 1}),
        LabelledRow("E", {0: 1, m - 1: 1, m: -1}),
    ]
    rows += [LabelledRow(f"G{i}", {i - 1: 1, i: -2, i + 1: 1}) for i in range(1, m)]
    rows.append(LabelledRow("H", {m - 1: m, m: -(m - 1)}))
    return rows


def build_star_cone(m: int) -> QCone:
    """Cone for U = {S_0, S_1, ..., S_m} (stars with i branches), m >= 2."""
    if m < 2:
        raise UnsupportedParameterError(f"star cone needs m >= 2 (got {m})")
    return _assemble(m, star_rows(m))


def star_rays(m: int) -> list[tuple[int, ...]]:
    return [
        (1,) + (0,) * m,
        (1,) * (m + 1),
        (1, 1) + tuple(range(2, m + 1)),
        tuple(range(1, m + 2)),
    ]


# --- ray families ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class RayFamilyId:
    family: str
    i: int | None = None

    def __post_init__(self):
        if self.family not in D_FAMILIES + S_FAMILIES + R_FAMILIES:
            raise ValueError(f"unknown ray family {self.family!r}")
        if (self.family in R_FAMILIES) != (self.i is not None):
            raise ValueError(f"family {self.family} {'needs' if self.family in R_FAMILIES else 'takes no'} branch index")

    def check(self, m: int):
        if m < 5:
            raise UnsupportedParameterError(f"ray families are defined for m >= 5 (got {m})")
        if self.i is not None and not (R_MIN_INDEX[self.family] <= self.i <= m - 1):
            raise ValueError(
                f"{self.family} index must lie in [{R_MIN_INDEX[self.family]}, {m - 1}], got {self.i}")

    @classmethod
    def parse(cls, s: str) -> "RayFamilyId":
        mt = re.fullmatch(r"([dsr][1-6])(?:[:(,](\d+)\)?)?", s.strip())
        if not mt:
            raise ValueError(f"cannot parse ray id {s!r}")
        return cls(mt.group(1), int(mt.group(2)) if mt.group(2) else None)

    def __str__(self):
        return self.family if self.i is None else f"{self.family}({self.i})"


def _piecewise(head: Sequence[int], body, tail, i: int, m: int) -> tuple[int, ...]:
    """``head``, then ``body(j)`` up to ``j = i``, then ``tail(j)`` up to ``j = m``."""
    out = list(head)
    for j in range(len(head), m + 1):
        out.append(body(j) if j <= i else tail(j))
    return tuple(out)


def ray_vector(rid: RayFamilyId | str, m: int) -> tuple[int, ...]:
    """Integer vector of a ray family at its conventional scale."""
    if isinstance(rid, str):
        rid = RayFamilyId.parse(rid)
    rid.check(m)
    f, i = rid.family, rid.i
    rng = range(m + 1)
    if f == "d1":
        return tuple(int(j == 0) for j in rng)
    if f == "d2":
        return (1,) * (m + 1)
    if f == "d3":
        return (1, 2) + tuple(range(2, m + 1))
    if f == "d4":
        return (1,) + tuple(j + 2 for j in range(1, m + 1))
    if f == "d5":
        return (2, 4) + tuple(2 * j + 1 for j in range(2, m + 1))
    if f == "s1":
        return (3, 6, 8, 10) + tuple(3 * j for j in range(4, m + 1))
    if f == "s2":
        return (6, 12, 16) + tuple(6 * j + 3 for j in range(3, m + 1))
    if f == "s3":
        return (2, 4, 5) + tuple(2 * j for j in range(3, m + 1))
    if f == "s4":
        return (3, 6, 8) + tuple(3 * j + 1 for j in range(3, m + 1))
    if f == "r1":
        return _piecewise((6 * i - 15, 12 * i - 30, 16 * i - 40),
                          lambda j: 6 * i * j + 3 * i - 18 * j, lambda j: j * (6 * i - 15), i, m)
    if f == "r2":
        return _piecewise((i + 2, 3 * i), lambda j: (j + 2) * i, lambda j: j * (i + 2), i, m)
    if f == "r3":
        return _piecewise((3 * i - 9, 6 * i - 18, 8 * i - 24),
                          lambda j: 3 * i * j + i - 10 * j, lambda j: j * (3 * i - 9), i, m)
    if f == "r4":
        return _piecewise((2 * i - 5, 4 * i - 10), lambda j: 2 * i * j + i - 6 * j, lambda j: j * (2 * i - 5), i, m)
    if f == "r5":
        return tuple(max(i, j) for j in rng)
    if f == "r6":
        return _piecewise((i + 1, 3 * i - 1), lambda j: 2 + (i - 1) * (j + 2), lambda j: j * (i + 1), i, m)
    raise ValueError(f"unknown ray family {f}")


def ray(rid: RayFamilyId | str, m: int) -> Ray:
    return Ray.of(ray_vector(rid, m))


def family_ids(m: int) -> list[RayFamilyId]:
    ids = [RayFamilyId(f) for f in D_FAMILIES + S_FAMILIES]
    for f in R_FAMILIES:
        ids += [RayFamilyId(f, i) for i in range(R_MIN_INDEX[f], m)]
    return ids


def enumerate_expected_rays(m: int) -> dict[Ray, RayFamilyId]:
    """Normalized ray -> family id for every d, s and r ray of Q(m)."""
    if m < 5:
        raise UnsupportedParameterError(f"ray families are defined for m >= 5 (got {m})")
    out: dict[Ray, RayFamilyId] = {}
    for rid in family_ids(m):
        out.setdefault(ray(rid, m), rid)
    return out


# --- tropical combinations ---------------------------------------------------

def tropical_sum(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise ValueError("tropical sum of vectors with different lengths")
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class TropicalDecomposition:
    """Componentwise max of nonnegative integer combinations of d-rays.

    Each term maps a d-family name to its coefficient.
    """

    terms: tuple[tuple[tuple[str, int], ...], ...]

    @classmethod
    def of(cls, *terms: dict[str, int]) -> "TropicalDecomposition":
        return cls(tuple(tuple(sorted((k, v) for k, v in t.items() if v)) for t in terms))

    def term_vector(self, t, m: int) -> tuple[int, ...]:
        out = [0] * (m + 1)
        for fam, c in t:
            for j, x in enumerate(ray_vector(RayFamilyId(fam), m)):
                out[j] += c * x
        return tuple(out)

    def evaluate(self, m: int) -> tuple[int, ...]:
        vecs = [self.term_vector(t, m) for t in self.terms]
        acc = vecs[0]
        for v in vecs[1:]:
            acc = tropical_sum(acc, v)
        return acc

    def __str__(self):
        def term(t):
            s = " + ".join(f"{c}*{f}" if c != 1 else f for f, c in t)
            return f"({s})" if len(t) > 1 else s
        return " (+) ".join(term(t) for t in self.terms)


def decomposition(rid: RayFamilyId | str, m: int) -> TropicalDecomposition:
    if isinstance(rid, str):
        rid = RayFamilyId.parse(rid)
    rid.check(m)
    f, i = rid.family, rid.i
    T = TropicalDecomposition.of
    if f in D_FAMILIES:
        return T({f: 1})
    table = {
        "s1": lambda: T({"d3": 3}, {"d4": 2}),
        "s2": lambda: T({"d5": 3}, {"d4": 4}),
        # 2*d3 (+) d5 collapses to d5; d2 + d4 supplies the y_2 = 5 entry
        "s3": lambda: T({"d3": 2}, {"d2": 1, "d4": 1}),
        "s4": lambda: T({"d3": 1, "d5": 1}, {"d4": 2}),
        "r1": lambda: T({"d4": 4 * i - 10}, {"d4": 6, "d5": 3 * (i - 4)}, {"d3": 6 * i - 15}),
        "r2": lambda: T({"d4": i}, {"d3": i + 2}),
        "r3": lambda: T({"d2": 1, "d3": i - 5, "d4": 1, "d5": i - 3}, {"d4": 2 * (i - 3)}, {"d3": 3 * i - 9}),
        "r4": lambda: T({"d4": 2, "d5": i - 4}, {"d3": 2 * i - 5}),
        "r5": lambda: T({"d2": i}, {"d3": 1}),
        "r6": lambda: T({"d2": 2, "d4": i - 1}, {"d3": i + 1}),
    }
    return table[f]()


def functional_value(functional: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(functional, v)), Fraction(0))
