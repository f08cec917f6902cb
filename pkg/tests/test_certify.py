import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import hom_density
from tropprof.certify import (STAR, BinomialInequality, DensityInequality, InequalityError, ParseError, SearchBudget,
                              certify, counterexample_graph, densify_to_numbers, format_inequality, linear_form,
                              parse_density, parse_inequality, side_values, violates)
from tropprof.cone import Ray, contains
from tropprof.falsifier import SearchConfig, candidate_graphs, check_on_graph
from tropprof.graph import FamilyDescriptor, FamilyKind, Graph, Pattern, build_family, materialize_pattern
from tropprof.homcount import almost_star_counts, hom_tree
from tropprof.linalg import dot
from tropprof.tropical import RayFamilyId, build_Q, enumerate_expected_rays

F = Fraction


def ineq(m, alpha, beta):
    return BinomialInequality(m, tuple(alpha), tuple(beta))


def unit(m, **kw):
    v = [0] * (m + 1)
    for k, x in kw.items():
        v[int(k[1:])] = x
    return v


exponents = st.lists(st.fractions(min_value=0, max_value=5, max_denominator=4), min_size=6, max_size=6)


class TestGrammar:
    def test_example(self):
        q = parse_inequality("V^1 T2 >= T0^2", 5)
        assert q.alpha == (1, 0, 0, 1, 0, 0) and q.beta == (0, 2, 0, 0, 0, 0)

    def test_rational_exponent(self):
        q = parse_inequality("T0^3/2 >= T1", 5)
        assert q.alpha[1] == F(3, 2)

    def test_repeated_atoms_add(self):
        assert parse_inequality("T0 T0^2 >= T1", 5).alpha[1] == 3

    def test_shared_factor_kept(self):
        q = parse_inequality("V T0 >= V T1", 5)
        assert q.alpha[0] == q.beta[0] == 1

    def test_infers_m(self):
        assert parse_inequality("T7 >= T6").m == 8
        assert parse_inequality("T0 >= V").m == 5

    @pytest.mark.parametrize("text,token,pos", [
        ("T0 >= X1", "X1", 6),
        ("T0 => T1", "<end>", 8),
        ("T0^ >= T1", "T0^", 0),
        ("T0 >= T1^1/0", "T1^1/0", 6),
        (">= T1", ">=", 0),
        ("T0 >=", "<end>", 5),
        ("T0 >= T1 >= T2", ">=", 9),
        ("T0 >= T9", "T9", 6),
    ])
    def test_errors_name_token(self, text, token, pos):
        with pytest.raises(ParseError) as e:
            parse_inequality(text, 5)
        assert (e.value.token, e.value.position) == (token, pos)

    def test_star_atoms(self):
        q = parse_inequality("S2 >= S1", 4, family=STAR)
        assert q.functional == (0, -1, 1, 0, 0)
        with pytest.raises(ParseError):
            parse_inequality("S2 >= S1", 4)
        with pytest.raises(ParseError):
            parse_inequality("T2 >= S1", 4, family=STAR)

    @given(exponents, exponents)
    def test_round_trip(self, a, b):
        if not any(a) and not any(b):
            return
        q = ineq(5, a, b)
        assert parse_inequality(format_inequality(q), 5) == q

    def test_validation(self):
        with pytest.raises(InequalityError):
            ineq(5, [0] * 6, [0] * 6)
        with pytest.raises(InequalityError):
            ineq(5, [-1, 0, 0, 0, 0, 0], [0] * 6)
        with pytest.raises(InequalityError):
            ineq(5, [1] * 5, [0] * 6)

    def test_linear_form(self):
        assert linear_form((0, 4, -3, 0)) == "4y1 − 3y2"
        assert linear_form((0, -1, 1)) == "−y1 + y2"
        assert linear_form((F(1, 2), 0, -2)) == "1/2y0 − 2y2"


class TestDensify:
    def test_first_example(self):
        d = parse_density("T0 >= T1")
        q = densify_to_numbers(d, 5)
        assert q == ineq(5, [1, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0])

    def test_same_pattern(self):
        assert densify_to_numbers(parse_density("T3 >= T3"), 5) == ineq(5, unit(5, y4=1), unit(5, y4=1))

    def test_vertex_squared(self):
        q = densify_to_numbers(parse_density("V^2 >= T0"), 5)
        assert q == ineq(5, unit(5, y0=3), unit(5, y1=1))

    def test_left_heavier(self):
        q = densify_to_numbers(parse_density("T1 >= T0"), 5)
        assert q == ineq(5, unit(5, y2=1), unit(5, y0=1, y1=1))

    def test_pattern_out_of_range(self):
        with pytest.raises(InequalityError):
            densify_to_numbers(parse_density("T6 >= T0"), 5)

    @pytest.mark.parametrize("text", ["T0 >= T1", "V^2 >= T0", "T1 T0 >= T2^2", "T0^3/2 >= V T1"])
    def test_agrees_with_densities(self, text):
        d = parse_density(text)
        q = densify_to_numbers(d, 5)
        rng = random.Random(7)
        gs = [build_family(FamilyDescriptor(FamilyKind.SINGLE_EDGE)),
              build_family(FamilyDescriptor(FamilyKind.STAR, 3))]
        gs += [Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5) if rng.random() < 0.5])
               for _ in range(5)]
        for g in gs:
            if g.num_edges == 0:
                continue
            L = q.exponent_lcm()

            def side(terms):
                out = F(1)
                for p, e in terms:
                    out *= hom_density(materialize_pattern(p), g) ** int(e * L)
                return out

            dens = side(d.lhs) >= side(d.rhs)
            lhs, rhs = side_values(q, almost_star_counts(g, 5).counts)
            assert dens == (lhs >= rhs)


class TestCertify:
    def test_row_b(self):
        r = certify(ineq(5, unit(5, y1=4), unit(5, y2=3)))
        assert r.is_valid
        assert r.certificate.support() == [1]
        assert r.certificate.multipliers[1] == 1
        assert r.certificate.lines()[0].startswith("1 × (4y1 − 3y2 ≥ 0)")

    def test_row_f(self):
        r = certify(ineq(5, unit(5, y0=1, y3=1), unit(5, y1=2)))
        assert r.is_valid and r.certificate.support() == [5]

    def test_reverse_row_b(self):
        r = certify(ineq(5, unit(5, y2=3), unit(5, y1=4)), counterexample=True)
        assert not r.is_valid
        ref = r.refutation
        assert ref.violating_ray.direction == (1, 2, 2, 3, 4, 5)
        assert ref.ray_id == RayFamilyId("d3")
        cx = ref.counterexample
        assert cx is not None and cx.lhs < cx.rhs
        assert cx.n <= 100 and "star" in cx.description
        assert hom_tree(materialize_pattern(Pattern.almost_star(1)), cx.graph) ** 3 < \
            hom_tree(materialize_pattern(Pattern.almost_star(0)), cx.graph) ** 4

    def test_d1_counterexample(self):
        q = ineq(5, unit(5, y1=1), unit(5, y0=3))
        r = certify(q, counterexample=True)
        cx = r.refutation.counterexample
        assert r.refutation.ray_id == RayFamilyId("d1")
        assert (cx.n, cx.l) == (3, 1)
        assert (cx.lhs, cx.rhs) == (2, 27)

    def test_equal_sides(self):
        r = certify(ineq(5, unit(5, y2=1), unit(5, y2=1)))
        assert r.is_valid and not r.certificate.support()

    def test_fractional_exponents(self):
        # (T0^4 >= T1^3)^(1/2)
        r = certify(parse_inequality("T0^2 >= T1^3/2", 5))
        assert r.is_valid and r.certificate.multipliers[1] == F(1, 2)

    def test_no_counterexample_unless_requested(self):
        r = certify(ineq(5, unit(5, y1=1), unit(5, y0=3)))
        assert r.refutation.counterexample is None and not r.refutation.asymptotic_only

    def test_budget_exhausted(self):
        # the Farkas ray here is s1, whose construction needs n >= 2
        q = parse_inequality("T0 >= T1", 5)
        r = certify(q, counterexample=True, budget=SearchBudget(max_n=1, max_l=1, ray_candidates=1))
        assert r.refutation.ray_id == RayFamilyId("s1")
        assert r.refutation.asymptotic_only and r.refutation.counterexample is None

    def test_counterexample_lexicographic(self):
        q = parse_inequality("T0 >= T1", 5)
        rid = RayFamilyId("s1")
        cx = counterexample_graph(q, rid)
        for n in range(1, cx.n + 1):
            for l in range(1, 4):
                if (n, l) >= (cx.n, cx.l):
                    break
                assert counterexample_graph(q, rid, SearchBudget(max_n=n, max_l=l)) is None or (n, l) >= (cx.n, cx.l)

    @pytest.mark.parametrize("m", [5, 6, 8])
    def test_rendered_rows_reparse(self, m):
        q = build_Q(m)
        r = certify(BinomialInequality.from_functional(m, [sum(row[k] for row in q.rows) for k in range(m + 1)]))
        assert r.is_valid
        for text, row in zip(r.certificate.rendered_inequalities(), q.rows):
            assert parse_inequality(text, m).functional == row

    @given(st.lists(st.integers(-3, 3), min_size=6, max_size=6).filter(any))
    def test_soundness(self, c):
        q = BinomialInequality.from_functional(5, c)
        r = certify(q)
        Q = build_Q(5)
        if r.is_valid:
            lam = r.certificate.multipliers
            assert all(x >= 0 for x in lam)
            assert tuple(sum(l * row[k] for l, row in zip(lam, Q.rows)) for k in range(6)) == q.functional
            assert all(dot(q.functional, ray.direction) >= 0 for ray in enumerate_expected_rays(5))
        else:
            ref = r.refutation
            assert contains(Q.cone, ref.farkas_ray.direction)
            assert dot(q.functional, ref.farkas_ray.direction) < 0
            assert ref.ray_id is not None
            assert ref.violating_ray == ref.farkas_ray
            assert Ray.of(ref.construction.evaluate(5)) == ref.violating_ray

    def test_star_mode(self):
        r = certify(parse_inequality("S1 S3 >= S2^2", 5, family=STAR))
        assert r.is_valid
        r = certify(parse_inequality("S2^2 >= S1 S3", 5, family=STAR))
        assert not r.is_valid
        assert r.refutation.ray_id is None


class TestAgainstFalsifier:
    """Random inequalities: Valid verdicts survive the battery, counterexamples re-check."""

    @staticmethod
    def battery():
        cfg = SearchConfig(samples=2000, seed=11)
        out = [(name, almost_star_counts(g, 5).counts) for name, g in candidate_graphs(cfg)]
        # zero counts fall outside the positive profile
        return [(name, c) for name, c in out if all(c)]

    def test_500_random(self):
        battery = self.battery()
        rng = random.Random(2024)
        seen_valid = seen_invalid = 0
        for _ in range(500):
            alpha = [rng.choice([0, 0, 0, 1, 2, 3]) for _ in range(6)]
            beta = [rng.choice([0, 0, 0, 1, 2, 3]) for _ in range(6)]
            if not any(alpha) and not any(beta):
                continue
            q = ineq(5, alpha, beta)
            r = certify(q, counterexample=True)
            if r.is_valid:
                seen_valid += 1
                for name, counts in battery:
                    assert not violates(q, counts), (format_inequality(q), name)
            else:
                seen_invalid += 1
                cx = r.refutation.counterexample
                if cx is None:
                    continue
                assert violates(q, cx.profile.counts)
                if cx.graph is not None:
                    assert not check_on_graph(q, cx.graph).holds
        assert seen_valid > 20 and seen_invalid > 20
