"""Exact two-phase simplex over ``Fraction`` with Bland's rule.

Solves ``min c.x  s.t.  A x = b, x >= 0``. Bland's rule (smallest eligible
index for both entering and leaving variables) rules out cycling, so the
method always terminates; speed is secondary at the sizes used here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import solve


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: Status
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    duals: tuple[Fraction, ...] | None = None  # y with A^T y <= c at optimum


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int):
        rows, rhs = self.rows, self.rhs
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        rhs[r] /= pv
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
                rhs[i] -= f * rhs[r]
        self.basis[r] = c

    def run(self, cost: list[Fraction], allowed: int) -> Status:
        """Minimize ``cost`` over the current basis; columns >= allowed never enter."""
        while True:
            cb = [cost[b] for b in self.basis]
            enter = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                red = cost[j] - sum((cb[i] * self.rows[i][j] for i in range(len(self.rows))), Fraction(0))
                if red < 0:
                    enter = j
                    break
            if enter is None:
                return Status.OPTIMAL
            leave, best = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                return Status.UNBOUNDED
            self.pivot(leave, enter)


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    m = len(A)
    n = len(c)
    c = [Fraction(x) for x in c]
    rows = []
    rhs = []
    for i in range(m):
        r = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        rows.append(r + [Fraction(int(k == i)) for k in range(m)])
        rhs.append(bi)
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1, n + m)
    if sum((tab.rhs[i] for i in range(m) if tab.basis[i] >= n), Fraction(0)) > 0:
        return LPResult(Status.INFEASIBLE)

    # drive zero-level artificials out; rows with nothing to pivot on are redundant
    keep = []
    for i in range(m):
        if tab.basis[i] >= n:
            j = next((j for j in range(n) if tab.rows[i][j] != 0 and j not in tab.basis), None)
            if j is None:
                continue
            tab.pivot(i, j)
        keep.append(i)
    tab.rows = [tab.rows[i] for i in keep]
    tab.rhs = [tab.rhs[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    status = tab.run(c + [Fraction(0)] * m, n)
    if status is Status.UNBOUNDED:
        return LPResult(Status.UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bvar in enumerate(tab.basis):
        x[bvar] = tab.rhs[i]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    duals = _duals(A, c, tab.basis, m)
    return LPResult(Status.OPTIMAL, tuple(x), value, duals)


def _duals(A, c, basis, m) -> tuple[Fraction, ...]:
    # B^T y = c_B over the original rows; redundant rows may take any value
    if not basis:
        return tuple(Fraction(0) for _ in range(m))
    bt = [[Fraction(A[i][j]) for i in range(m)] for j in basis]
    y = solve(bt, [c[j] for j in basis])
    return tuple(y) if y is not None else tuple(Fraction(0) for _ in range(m))
