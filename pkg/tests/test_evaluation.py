import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from socialsphere import Graph, sample_training_graph
from socialsphere.contagion import SpreadCurve, simulate_simple
from socialsphere.evaluation import (curve_verdict, evaluate, ground_truth_seeds,
                                     latent_influencer_report, mse, overlap)
from socialsphere.selection import SeedSet, select_seeds

import oracles

# curve values are always counts over |V|
fraction = st.integers(0, 5242).map(lambda c: c / 5242)
curves = st.lists(fraction, min_size=2, max_size=16)


class TestMSE:
    def test_identical(self):
        assert mse([0.1, 0.2, 0.3], [0.1, 0.2, 0.3]) == 0.0

    def test_arithmetic(self):
        assert mse([0.9, 0.2, 0.4], [0.0, 0.1, 0.2]) == pytest.approx(0.025, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            mse([0, 1], [0, 1, 1])
        with pytest.raises(ValueError):
            mse([0.5], [0.5])

    def test_accepts_curves(self):
        a = SpreadCurve(np.array([0.1, 0.5]))
        b = SpreadCurve(np.array([0.1, 0.3]))
        assert mse(a, b) == pytest.approx(0.04)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_properties(self, data):
        a = data.draw(curves)
        b = data.draw(st.lists(fraction, min_size=len(a), max_size=len(a)))
        m = mse(a, b)
        assert m >= 0
        assert m == mse(b, a)
        assert (m == 0) == (a[1:] == b[1:])

    def test_fractions_not_counts(self):
        # same fractions on graphs of different size give the same MSE
        a = [1 / 10, 3 / 10, 5 / 10]
        b = [1 / 10, 2 / 10, 5 / 10]
        big_a = [x / 100 for x in (10, 30, 50)]
        big_b = [x / 100 for x in (10, 20, 50)]
        assert mse(a, b) == pytest.approx(mse(big_a, big_b), abs=1e-15)


class TestOverlap:
    def test_examples(self):
        assert overlap({1, 2, 3}, {2, 3, 4}, 3) == pytest.approx(2 / 3)
        assert overlap([1, 2], [2, 1]) == 1.0
        assert overlap([1, 2], [3, 4]) == 0.0

    def test_truncated_uses_declared_k(self):
        assert overlap(SeedSet((1, 2), 5), SeedSet((1, 2, 3, 4, 5), 5)) == 0.4

    @settings(max_examples=100, deadline=None)
    @given(st.sets(st.integers(0, 20), min_size=1, max_size=6),
           st.sets(st.integers(0, 20), min_size=1, max_size=6))
    def test_symmetric(self, a, b):
        k = max(len(a), len(b))
        assert overlap(a, b, k) == overlap(b, a, k)
        if len(a) == len(b):
            assert (overlap(a, b) == 1.0) == (a == b)


class TestGroundTruth:
    def test_identity_pipeline(self):
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)])
        train = sample_training_graph(g, 1.0, rng=0)
        for alg in ("VoteRank", "KHighest", "LIR", "GraphColoring", "JointNomination"):
            pred = select_seeds(train, alg, 2)
            truth = ground_truth_seeds(g, alg, 2)
            assert overlap(pred, truth) == 1.0
            r = evaluate(pred, truth, simulate_simple(g, pred), simulate_simple(g, truth))
            assert r.mse == 0.0 and r.overlap_accuracy == 1.0

    def test_star(self):
        g = Graph.from_edges([(0, i) for i in range(1, 5)])
        assert ground_truth_seeds(g, "KHighest", 1).nodes == (0,)

    def test_voterank_hand_trace(self, random_graphs):
        (n, edges, g), = random_graphs(1, n_range=(20, 20), seed=41)
        want = oracles.voterank(oracles.adjacency(n, edges), 3)
        assert list(ground_truth_seeds(g, "VoteRank", 3).nodes) == want


class TestVerdict:
    def test_cases(self):
        assert curve_verdict([0.1, 0.2], [0.1, 0.2]) == "matches"
        assert curve_verdict([0.1, 0.3], [0.1, 0.2]) == "dominates"
        assert curve_verdict([0.1, 0.1], [0.1, 0.2]) == "dominated"
        assert curve_verdict([0.2, 0.1], [0.1, 0.2]) == "crossing"


def bridge_graph():
    """Hub 0 with four slow edges (w = 0.25) next to a degree-2 bridge 5
    that feeds two unit-weight chains."""
    slow = [(0, i, 0.25) for i in range(1, 5)]
    fast = [(5, 6, 1.0), (5, 7, 1.0), (6, 8, 1.0), (7, 9, 1.0), (8, 10, 1.0), (9, 11, 1.0)]
    return Graph.from_edges(slow + fast)


class TestLatentReport:
    def test_same_seeds(self):
        g = bridge_graph()
        s = SeedSet((0,), 1)
        rep = latent_influencer_report(g, g, s, s, g.degrees)
        assert rep.latent == () and rep.verdict == "matches" and not rep.dominates

    def test_bridge_outspreads_hub(self):
        g = bridge_graph()
        deg = g.degrees.astype(float)
        hub = int(np.argmax(deg))
        assert hub == 0 and deg[5] == 2
        # exhaustive single-seed comparison against the hub's curve
        adj = oracles.adjacency(g.n, {(int(a), int(b)): w for a, b, w in zip(*g.edges())})
        hub_sets = oracles.simple_contagion_sets(adj, [hub], 15)
        dominating = []
        for v in range(g.n):
            sets = oracles.simple_contagion_sets(adj, [v], 15)
            sizes = [len(s) for s in sets]
            ref = [len(s) for s in hub_sets]
            if all(a >= b for a, b in zip(sizes, ref)) and sizes != ref:
                dominating.append(v)
        assert 5 in dominating
        for v in range(g.n):
            rep = latent_influencer_report(g, g, SeedSet((v,), 1), SeedSet((hub,), 1), deg)
            assert rep.dominates == (v in dominating)
            assert rep.latent == (() if v == hub else (v,))
