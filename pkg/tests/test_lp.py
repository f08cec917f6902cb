from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import lp_by_bases
from tropprof.linalg import nullspace, primitive, rank, rref, solve
from tropprof.lp import Status, solve_lp

small = st.integers(-4, 4)


class TestLinalg:
    def test_rank(self):
        assert rank([[1, 2], [2, 4]]) == 1
        assert rank([[1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2
        assert rank([]) == 0

    @given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
    def test_rank_matches_rref(self, rows):
        assert rank(rows) == len(rref(rows)[1])

    @given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
    def test_nullspace(self, rows):
        ns = nullspace(rows, 4)
        assert len(ns) == 4 - rank(rows)
        for v in ns:
            assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)

    def test_solve(self):
        assert solve([[2, 0], [0, 3]], [4, 9]) == (2, 3)
        assert solve([[1, 1], [1, 1]], [1, 2]) is None

    def test_primitive(self):
        assert primitive([Fraction(1, 2), Fraction(-1, 3)]) == (3, -2)
        assert primitive([0, -4, 6]) == (0, -2, 3)


class TestSimplex:
    def test_simple(self):
        # min -x - y  s.t. x + y + s = 4, x + t = 3
        res = solve_lp([-1, -1, 0, 0], [[1, 1, 1, 0], [1, 0, 0, 1]], [4, 3])
        assert res.status is Status.OPTIMAL and res.value == -4

    def test_infeasible(self):
        assert solve_lp([0, 0], [[1, 1]], [-1]).status is Status.INFEASIBLE

    def test_unbounded(self):
        assert solve_lp([-1, 0], [[1, -1]], [0]).status is Status.UNBOUNDED

    def test_redundant_rows(self):
        res = solve_lp([1, 1], [[1, 1], [2, 2]], [2, 4])
        assert res.status is Status.OPTIMAL and res.value == 2

    def test_degenerate_terminates(self):
        # a classic cycling example for the textbook rule
        A = [[Fraction(1, 4), -8, -1, 9, 1, 0, 0],
             [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1, 0],
             [0, 0, 1, 0, 0, 0, 1]]
        c = [Fraction(-3, 4), 20, Fraction(-1, 2), 6, 0, 0, 0]
        res = solve_lp(c, A, [0, 0, 1])
        assert res.status is Status.OPTIMAL and res.value == Fraction(-5, 4)

    @given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=2),
           st.lists(small, min_size=3, max_size=3), st.lists(st.integers(0, 5), min_size=2, max_size=2))
    def test_against_basis_enumeration(self, rows, cost, rhs):
        # append a bounding row x1 + x2 + x3 + s = 6 so the problem is bounded
        A = [r + [0] for r in rows] + [[1, 1, 1, 1]]
        b = rhs[: len(rows)] + [6]
        c = cost + [0]
        res = solve_lp(c, A, b)
        want = lp_by_bases(c, A, b)
        if want is None:
            assert res.status is Status.INFEASIBLE
        else:
            assert res.status is Status.OPTIMAL and res.value == want
            assert all(x >= 0 for x in res.x)
            assert all(sum(Fraction(a) * x for a, x in zip(row, res.x)) == bi for row, bi in zip(A, b))

    @given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=2, max_size=2),
           st.lists(st.integers(0, 4), min_size=4, max_size=4))
    def test_duals_are_dual_feasible(self, rows, cost):
        A = rows + [[1, 1, 1, 1]]
        b = [0, 0, 3]
        res = solve_lp(cost, A, b)
        assume(res.status is Status.OPTIMAL)
        y = res.duals
        for j in range(4):
            assert sum(Fraction(A[i][j]) * y[i] for i in range(3)) <= cost[j]
        assert sum(bi * yi for bi, yi in zip(b, y)) == res.value
