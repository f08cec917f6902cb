import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from tropprof.graph import (FamilyDescriptor, FamilyKind, Graph, GraphError, Pattern, build_family,
                            disjoint_union, format_graph, is_chordal, is_series_parallel, iter_all_graphs,
                            materialize_pattern, maximal_cliques, parse_graph, perfect_elimination_order,
                            star_pattern, tensor_product)
from tropprof.homcount import almost_star_counts, hom_brute

K2 = Graph.from_edges(2, [(0, 1)])
P2 = Graph.from_edges(3, [(0, 1), (1, 2)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
K4 = Graph.from_edges(4, itertools.combinations(range(4), 2))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 2)])

    def test_edges_are_normalized(self):
        g = Graph.from_edges(3, [(2, 0), (0, 2)])
        assert g.edges == {(0, 2)}
        assert g.adjacent(0, 2) and g.adjacent(2, 0)

    @given(graphs())
    def test_adjacency_symmetric(self, g):
        for u, v in itertools.product(range(g.n), repeat=2):
            assert g.adjacent(u, v) == g.adjacent(v, u)
        assert sum(g.degrees()) == 2 * g.num_edges


class TestPatterns:
    def test_single_vertex(self):
        g = materialize_pattern(Pattern.vertex())
        assert (g.n, g.num_edges) == (1, 0)

    def test_almost_star_zero_is_path(self):
        g = materialize_pattern(Pattern.almost_star(0))
        assert nx.is_isomorphic(to_nx(g), nx.path_graph(3))

    def test_almost_star_three(self):
        g = materialize_pattern(Pattern.almost_star(3))
        assert g.n == 6 and g.num_edges == 5
        centre = max(range(6), key=g.degree)
        assert g.degree(centre) == 4
        assert sum(1 for v in g.neighbors(centre) if g.degree(v) == 2) == 1

    @pytest.mark.parametrize("k", range(0, 9))
    def test_shape(self, k):
        g = materialize_pattern(Pattern.almost_star(k))
        assert (g.n, g.num_edges) == (k + 3, k + 2)
        assert g.is_forest() and len(g.components()) == 1
        if k >= 1:
            assert sorted(g.degrees(), reverse=True) == [k + 1, 2] + [1] * (k + 1)

    def test_coordinates_round_trip(self):
        for i in range(8):
            assert Pattern.from_coordinate(i).coordinate == i
        assert str(Pattern.from_coordinate(0)) == "V"
        assert str(Pattern.from_coordinate(3)) == "T2"

    def test_star_pattern(self):
        assert star_pattern(0).n == 1
        assert sorted(star_pattern(4).degrees()) == [1, 1, 1, 1, 4]


class TestFamilies:
    def test_star(self):
        g = build_family(FamilyDescriptor(FamilyKind.STAR, 3))
        assert g.n == 4 and sorted(g.degrees()) == [1, 1, 1, 3]

    def test_k22_is_c4(self):
        g = build_family(FamilyDescriptor(FamilyKind.COMPLETE_BIPARTITE, 2))
        assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(4))

    def test_isolated_plus_edge(self):
        g = build_family(FamilyDescriptor(FamilyKind.ISOLATED_PLUS_EDGE, 5))
        assert g.n == 5 and g.num_edges == 1

    def test_isolated_plus_edge_needs_three(self):
        with pytest.raises(GraphError):
            FamilyDescriptor(FamilyKind.ISOLATED_PLUS_EDGE, 2)

    def test_single_edge_ignores_n(self):
        assert build_family(FamilyDescriptor(FamilyKind.SINGLE_EDGE, 99)) == K2

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_p2_blowup_structure(self, n):
        g = build_family(FamilyDescriptor(FamilyKind.P2_BLOWUP, n))
        sq = n * n
        assert g.n == 2 * sq + 1
        A, B, C = {0}, set(range(1, sq + 1)), set(range(sq + 1, 2 * sq + 1))

        def between(X, Y):
            return sum(1 for u, v in g.edges if (u in X and v in Y) or (u in Y and v in X))

        assert (between(A, B), between(B, C), between(A, C)) == (sq, n**3, 0)
        assert between(B, B) == between(C, C) == 0
        assert all(g.degree(b) == n + 1 for b in B)
        assert all(g.degree(c) == n for c in C)

    @pytest.mark.parametrize("kind", list(FamilyKind))
    def test_vertex_count_matches(self, kind):
        n = 3
        d = FamilyDescriptor(kind, n)
        assert build_family(d).n == d.num_vertices


class TestOperations:
    def test_union_of_edges(self):
        g = disjoint_union(K2, K2)
        assert (g.n, g.num_edges) == (4, 2)

    def test_union_identity(self):
        assert disjoint_union(Graph.empty(0), P2) == P2

    def test_tensor_k2_k2(self):
        g = tensor_product(K2, K2)
        assert (g.n, g.num_edges) == (4, 2)
        assert all(d == 1 for d in g.degrees())

    def test_tensor_with_edgeless(self):
        assert tensor_product(P2, Graph.empty(1)).num_edges == 0

    @given(graphs(max_n=4), graphs(max_n=4))
    def test_hom_additive_and_multiplicative(self, g1, g2):
        h = materialize_pattern(Pattern.almost_star(1))
        a, b = hom_brute(h, g1), hom_brute(h, g2)
        assert hom_brute(h, disjoint_union(g1, g2)) == a + b
        assert hom_brute(h, tensor_product(g1, g2)) == a * b
        assert hom_brute(P2, disjoint_union(g1, g2)) == hom_brute(P2, g1) + hom_brute(P2, g2)

    def test_profiles_on_all_small_pairs(self):
        small = [g for n in range(1, 4) for g in iter_all_graphs(n)]
        for g1, g2 in itertools.product(small, repeat=2):
            assert almost_star_counts(disjoint_union(g1, g2), 3) == \
                almost_star_counts(g1, 3) + almost_star_counts(g2, 3)
            assert almost_star_counts(tensor_product(g1, g2), 3) == \
                almost_star_counts(g1, 3) * almost_star_counts(g2, 3)


class TestCliques:
    def test_reference_fixture(self):
        g = disjoint_union(Graph.empty(1), materialize_pattern(Pattern.almost_star(2)))
        cl = maximal_cliques(g)
        assert len(cl) == 5
        assert sum(1 for c in cl if len(c) == 1) == 1

    def test_k3(self):
        assert maximal_cliques(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])) == [frozenset({0, 1, 2})]

    def test_path(self):
        assert sorted(map(sorted, maximal_cliques(P2))) == [[0, 1], [1, 2]]

    @given(graphs(max_n=7))
    def test_against_networkx(self, g):
        ours = set(maximal_cliques(g))
        theirs = {frozenset(c) for c in nx.find_cliques(to_nx(g))}
        assert ours == theirs

    @given(graphs(max_n=7))
    def test_clique_invariants(self, g):
        cl = maximal_cliques(g)
        for c in cl:
            assert all(g.adjacent(u, v) for u, v in itertools.combinations(c, 2))
        assert not any(a < b for a in cl for b in cl)
        assert set().union(*cl) == set(range(g.n)) if g.n else cl == []


class TestChordalAndSP:
    def test_examples(self):
        assert is_chordal(P2) and is_chordal(K4)
        assert not is_chordal(C4)

    @given(graphs(max_n=7))
    def test_chordal_against_networkx(self, g):
        assert is_chordal(g) == nx.is_chordal(to_nx(g))

    @given(graphs(max_n=7))
    def test_peo_is_valid(self, g):
        order = perfect_elimination_order(g)
        if order is None:
            return
        pos = {v: i for i, v in enumerate(order)}
        for v in order:
            later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
            assert all(g.adjacent(a, b) for a, b in itertools.combinations(later, 2))

    def test_series_parallel(self):
        assert is_series_parallel(P2) and is_series_parallel(C4)
        assert not is_series_parallel(K4)
        k4_subdivided = Graph.from_edges(5, [(0, 1), (0, 2), (0, 4), (4, 3), (1, 2), (1, 3), (2, 3)])
        assert not is_series_parallel(k4_subdivided)

    @given(graphs(max_n=7))
    def test_series_parallel_is_treewidth_two(self, g):
        # no K4 minor iff treewidth <= 2; networkx's heuristics give an upper bound,
        # so compare only where that bound is tight
        tw, _ = nx.algorithms.approximation.treewidth_min_degree(to_nx(g))
        if tw <= 2:
            assert is_series_parallel(g)
        if g.num_edges > 2 * g.n - 3 and g.n >= 2:
            assert not is_series_parallel(g)


class TestFormat:
    def test_round_trip(self):
        g = build_family(FamilyDescriptor(FamilyKind.STAR, 3))
        assert parse_graph(format_graph(g)) == g

    def test_comments_and_blank_lines(self):
        assert parse_graph("# c\n3\n\n0 1\n# x\n1 2\n") == P2

    @pytest.mark.parametrize("text", ["", "x\n", "3\n0 0\n", "3\n0 1\n0 1\n", "3\n2 1\n", "3\n0 1 2\n", "2\n0 5\n"])
    def test_rejects(self, text):
        with pytest.raises(GraphError):
            parse_graph(text)

    def test_all_graphs_count(self):
        assert sum(1 for _ in iter_all_graphs(4)) == 64
