import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from socialsphere import Graph, UnknownNodeError, degree_and_strength, neighbors, shortest_distance
from socialsphere.graph import multi_source_distance, path_aggregate

import oracles
from conftest import graph_of


def path3(w=1.0):
    return Graph.from_edges([(0, 1, w), (1, 2, w)])


class TestConstruction:
    def test_rejects_bad_weights(self):
        for w in (0.0, -0.5, 1.5, math.nan):
            with pytest.raises(ValueError):
                Graph(2, [0], [1], [w])

    def test_rejects_self_loop_and_parallel(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(2, [1], [1], [1.0])
        with pytest.raises(ValueError, match="parallel"):
            Graph(2, [0, 1], [1, 0], [1.0, 1.0])

    def test_unknown_endpoint(self):
        with pytest.raises(UnknownNodeError):
            Graph(2, [0], [2], [1.0])

    def test_arrays_are_read_only(self):
        g = path3()
        with pytest.raises(ValueError):
            g.weights[0] = 0.5

    def test_edges_round_trip(self):
        g = Graph(4, [2, 0, 3], [1, 3, 2], [0.5, 1.0, 0.25])
        u, v, w = g.edges()
        assert u.tolist() == [0, 1, 2]
        assert v.tolist() == [3, 2, 3]
        assert w.tolist() == [1.0, 0.5, 0.25]
        assert g.with_edges(u, v, w) == g

    def test_empty_graph(self):
        g = Graph(3, [], [], [])
        assert g.num_edges == 0
        assert g.degrees.tolist() == [0, 0, 0]


class TestNeighbors:
    def test_direct(self):
        assert neighbors(path3(), 1, 1) == {0, 2}

    def test_two_hop(self):
        assert neighbors(path3(), 0, 2) == {1, 2}

    def test_isolated(self):
        g = Graph(3, [0], [1], [1.0])
        assert neighbors(g, 2, 1) == frozenset()

    def test_unknown_node(self):
        with pytest.raises(UnknownNodeError, match="7"):
            neighbors(path3(), 7, 1)

    def test_excludes_self_on_cycle(self):
        g = Graph.from_edges([(0, 1), (1, 2), (2, 0)])
        assert neighbors(g, 0, 3) == {1, 2}


class TestDegreeStrength:
    def test_star(self):
        g = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
        assert degree_and_strength(g, 0) == (3, 3.0)

    def test_mixed_weights(self):
        g = Graph.from_edges([(0, 1, 0.5), (0, 2, 0.25)])
        assert degree_and_strength(g, 0) == (2, 0.75)

    def test_isolated(self):
        g = Graph(2, [], [], [])
        assert degree_and_strength(g, 1) == (0, 0.0)

    def test_matches_adjacency_lists(self, random_graphs):
        for n, edges, g in random_graphs(20):
            adj = oracles.adjacency(n, edges)
            for v in range(n):
                k, s = degree_and_strength(g, v)
                assert k == len(adj[v]) == len(g.adjacency_lists[v])
                assert s == pytest.approx(sum(adj[v].values()), abs=1e-12)


class TestDistances:
    def test_unit_path(self):
        assert shortest_distance(path3(), 0)[2] == 2.0

    def test_inverse_weight(self):
        g = Graph.from_edges([(0, 1, 0.5)])
        assert shortest_distance(g, 0) == {0: 0.0, 1: 2.0}

    def test_cutoff_and_unreachable(self):
        g = Graph(4, [0, 1], [1, 2], [1.0, 0.5])
        assert shortest_distance(g, 0, cutoff=2.5) == {0: 0.0, 1: 1.0}
        assert 3 not in shortest_distance(g, 0)

    def test_unknown_source(self):
        with pytest.raises(UnknownNodeError):
            shortest_distance(path3(), 3)

    def test_against_path_enumeration(self, random_graphs):
        # 50 graphs of 20 nodes; sparse enough for exhaustive path listing
        for n, edges, g in random_graphs(50, n_range=(20, 20), p_range=(0.08, 0.16), seed=1):
            adj = oracles.adjacency(n, edges)
            for s in range(0, n, 4):
                want = oracles.distances_by_paths(adj, s)
                got = shortest_distance(g, s)
                assert got.keys() == want.keys()
                for v in want:
                    assert got[v] == pytest.approx(want[v], abs=1e-12)

    def test_multi_source_is_min(self, random_graphs):
        for n, edges, g in random_graphs(10, seed=2):
            srcs = [0, n - 1]
            combined = multi_source_distance(g, srcs)
            singles = [shortest_distance(g, s) for s in srcs]
            for v in range(n):
                best = min(d.get(v, math.inf) for d in singles)
                assert combined.get(v, math.inf) == best

    def test_triangle_inequality(self, random_graphs):
        for n, edges, g in random_graphs(5, seed=3):
            d = [shortest_distance(g, s) for s in range(n)]
            for a, b, c in itertools.product(range(n), repeat=3):
                if b in d[a] and c in d[b]:
                    assert d[a][c] <= d[a][b] + d[b][c] + 1e-12


class TestInvariants:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 10_000),
           st.sampled_from([0.1, 0.3, 0.7]))
    def test_symmetry_and_distance(self, n, seed, p):
        rng = random.Random(seed)
        edges = oracles.random_edges(rng, n, p, (0.1, 0.3, 0.25, 0.5, 1.0))
        g = graph_of(n, edges)
        for (u, v), w in edges.items():
            assert g.weight(u, v) == g.weight(v, u) == w
            assert abs(g.weight(u, v) * g.distance(u, v) - 1.0) <= 1e-12
            assert g.distance(u, v) >= 1.0
        assert np.array_equal(g.degrees, np.diff(g.indptr))
        assert g.num_edges == len(edges)


def test_path_aggregate():
    g = Graph.from_edges([(0, 1, 0.5), (1, 2, 0.25)])
    agg = path_aggregate(g, [0, 1, 2])
    assert agg.length == 2
    assert agg.total_distance == 6.0
    assert agg.total_weight == 0.75
    assert agg.total_distance >= agg.length >= agg.total_weight
    with pytest.raises(KeyError):
        path_aggregate(g, [0, 2])
