import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from socialsphere import Graph
from socialsphere.contagion import (ComplexParams, SpreadCurve, infected_sets_complex,
                                    infected_sets_simple, simulate, simulate_complex,
                                    simulate_simple)

import oracles
from conftest import graph_of

THETAS = [0.0, 0.3, 0.5, 1.0]


class TestSimple:
    def test_unit_path(self):
        g = Graph.from_edges([(0, 1), (1, 2)])
        assert simulate_simple(g, [0], 2).fractions.tolist() == [1 / 3, 2 / 3, 1.0]

    def test_half_weight(self):
        g = Graph.from_edges([(0, 1, 0.5)])
        sets = infected_sets_simple(g, [0], 2)
        assert sets[1] == {0} and sets[2] == {0, 1}

    def test_empty_seeds(self):
        with pytest.raises(ValueError):
            simulate_simple(Graph.from_edges([(0, 1)]), [])

    def test_unknown_seed(self):
        with pytest.raises(KeyError):
            simulate_simple(Graph.from_edges([(0, 1)]), [5])


class TestComplex:
    def test_star_two_leaves(self):
        # centre 0 with four leaves; leaves 1 and 2 seed
        g = Graph.from_edges([(0, i) for i in range(1, 5)])
        sets = infected_sets_complex(g, [1, 2], ComplexParams(0.5, 3))
        assert sets[1] == {0, 1, 2}
        assert sets[2] == {0, 1, 2, 3, 4}

    def test_theta_zero_is_hop_spread(self, random_graphs):
        for n, edges, g in random_graphs(10, seed=31):
            skeleton = graph_of(n, {k: 1.0 for k in edges})
            seeds = [0]
            a = simulate_complex(g, seeds, ComplexParams(0.0, 6))
            b = simulate_simple(skeleton, seeds, 6)
            assert a.fractions.tolist() == b.fractions.tolist()

    def test_theta_one_needs_all_neighbours(self):
        g = Graph.from_edges([(0, 2, 0.5), (1, 2, 0.5), (2, 3, 0.25)])
        sets = infected_sets_complex(g, [0, 1], ComplexParams(1.0, 4))
        assert 2 not in sets[-1]
        sets = infected_sets_complex(g, [0, 1, 3], ComplexParams(1.0, 4))
        assert 2 in sets[1]

    def test_pads_after_fixed_point(self):
        g = Graph.from_edges([(0, 1)])
        c = simulate_complex(g, [0], ComplexParams(0.5, 5))
        assert c.fractions.tolist() == [0.5] + [1.0] * 5

    def test_bad_params(self):
        with pytest.raises(ValueError):
            ComplexParams(1.5)
        with pytest.raises(ValueError):
            ComplexParams(0.5, 0)
        with pytest.raises(ValueError):
            simulate(Graph.from_edges([(0, 1)]), [0], "sir")


def _check_against_oracles(n, edges, g, rng):
    adj = oracles.adjacency(n, edges)
    seeds = rng.sample(range(n), rng.randint(1, min(3, n)))
    assert [set(s) for s in infected_sets_simple(g, seeds, 6)] == \
        oracles.simple_contagion_sets(adj, seeds, 6)
    for theta in THETAS:
        got = infected_sets_complex(g, seeds, ComplexParams(theta, 6))
        assert [set(s) for s in got] == oracles.complex_contagion_sets(adj, seeds, theta, 6)


def test_against_oracles_100_graphs():
    rng = random.Random(32)
    for _ in range(100):
        n = rng.randint(2, 30)
        edges = oracles.random_edges(rng, n, rng.uniform(0.05, 0.2))
        _check_against_oracles(n, edges, graph_of(n, edges), rng)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 16), st.integers(0, 10**6))
def test_against_oracles_hypothesis(n, seed):
    rng = random.Random(seed)
    edges = oracles.random_edges(rng, n, rng.uniform(0.1, 0.5))
    _check_against_oracles(n, edges, graph_of(n, edges), rng)


class TestCurves:
    def test_curve_invariants(self, random_graphs):
        for n, edges, g in random_graphs(20, seed=33):
            seeds = [0, n // 2]
            for c in (simulate_simple(g, seeds, 8), simulate_complex(g, seeds, ComplexParams(0.4, 8))):
                f = c.fractions
                assert len(c) == 9 and c.horizon == 8
                assert f[0] == len(set(seeds)) / n
                assert np.all(np.diff(f) >= 0) and f.min() >= 0 and f.max() <= 1

    def test_spread_curve_rejects_decrease(self):
        with pytest.raises(AssertionError):
            SpreadCurve(np.array([0.5, 0.4]))
        with pytest.raises(AssertionError):
            SpreadCurve(np.array([0.5, 1.2]))

    def test_relabeling_invariance(self):
        rng = random.Random(34)
        for _ in range(20):
            n = rng.randint(3, 15)
            edges = oracles.random_edges(rng, n, 0.3)
            perm = list(range(n))
            rng.shuffle(perm)
            g = graph_of(n, edges)
            h = graph_of(n, {tuple(sorted((perm[u], perm[v]))): w for (u, v), w in edges.items()})
            seeds = [0]
            assert simulate_simple(g, seeds, 6) == simulate_simple(h, [perm[0]], 6)
            for theta in THETAS:
                a = simulate_complex(g, seeds, ComplexParams(theta, 6)).fractions
                b = simulate_complex(h, [perm[0]], ComplexParams(theta, 6)).fractions
                assert np.array_equal(a, b)
