"""Small exact linear-algebra helpers over ``Fraction``."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vector = Sequence[Fraction | int]


def to_fractions(v: Vector) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def dot(a: Vector, b: Vector) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def rref(rows: Sequence[Vector]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Vector]) -> int:
    """Rank via fraction-free elimination on integer-scaled rows."""
    mat = [list(primitive(r)) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rk = 0
    for c in range(ncols):
        pr = next((i for i in range(rk, len(mat)) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[rk], mat[pr] = mat[pr], mat[rk]
        p = mat[rk]
        for i in range(rk + 1, len(mat)):
            if mat[i][c]:
                f = mat[i][c]
                mat[i] = [p[c] * x - f * y for x, y in zip(mat[i], p)]
        rk += 1
        if rk == len(mat):
            break
    return rk


def nullspace(rows: Sequence[Vector], ncols: int) -> list[tuple[Fraction, ...]]:
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    r, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][f]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Vector], rhs: Vector) -> tuple[Fraction, ...] | None:
    """One solution of ``rows @ x = rhs`` or ``None`` if inconsistent."""
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = r[i][n]
    return tuple(x)


def primitive(v: Vector) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries."""
    fr = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
