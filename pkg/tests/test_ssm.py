import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from socialsphere import Graph, build_predicted_graph, predicted_edge_weight, similarity_scores
from socialsphere.ingest import write_weighted, parse_weighted
from socialsphere.ssm import StaleScoresError


class TestWeight:
    @pytest.mark.parametrize("p,t,want", [(0.5, 1, 0.5), (0.5, 3, 0.875), (1.0, 5, 1.0),
                                          (0.2, 2, 0.36), (0.3, 4, 1 - 0.7 ** 4)])
    def test_values(self, p, t, want):
        assert abs(predicted_edge_weight(p, t) - want) <= 1e-12

    def test_errors(self):
        for p in (0.0, -0.1, 1.01):
            with pytest.raises(ValueError):
                predicted_edge_weight(p, 1)
        with pytest.raises(ValueError):
            predicted_edge_weight(0.5, 0)

    def test_tiny_p_keeps_precision(self):
        assert predicted_edge_weight(1e-18, 3) == pytest.approx(3e-18, rel=1e-12)

    def test_array(self):
        out = predicted_edge_weight(np.array([0.5, 1.0]), 2)
        assert out.tolist() == [0.75, 1.0]

    @settings(max_examples=200, deadline=None)
    @given(st.floats(1e-9, 1.0), st.floats(1e-9, 1.0), st.integers(1, 50), st.integers(1, 50))
    def test_monotone(self, p, q, t, s):
        lo, hi = sorted((p, q))
        ta, tb = sorted((t, s))
        assert predicted_edge_weight(lo, ta) <= predicted_edge_weight(hi, ta)
        assert predicted_edge_weight(lo, ta) <= predicted_edge_weight(lo, tb)
        assert 0 < predicted_edge_weight(lo, ta) <= 1

    def test_limit(self):
        assert predicted_edge_weight(0.1, 10_000) == pytest.approx(1.0)


def chain():
    return Graph.from_edges([(0, 1, 0.5), (1, 2, 1.0), (2, 3, 0.25), (3, 4, 1.0)])


class TestBuild:
    def test_adds_weighted_edges(self):
        pg = build_predicted_graph(chain(), {(0, 2): 0.5, (3, 1): 0.2}, 3)
        g = pg.graph
        assert g.weight(0, 2) == 0.875
        assert g.distance(0, 2) == 1 / 0.875
        assert g.weight(1, 3) == pytest.approx(1 - 0.8 ** 3)
        assert g.weight(0, 1) == 0.5            # observed edges untouched
        assert pg.num_predicted == 2
        assert g.num_edges == chain().num_edges + 2

    def test_empty_scores(self):
        pg = build_predicted_graph(chain(), {}, 4)
        assert pg.graph == chain()
        assert pg.num_predicted == 0

    def test_horizon_zero_is_identity(self):
        pg = build_predicted_graph(chain(), {(0, 2): 0.9}, 0)
        assert pg.graph == chain()

    def test_stale(self):
        with pytest.raises(StaleScoresError):
            build_predicted_graph(chain(), {(1, 0): 0.5}, 1)

    def test_bad_probability(self):
        with pytest.raises(ValueError):
            build_predicted_graph(chain(), {(0, 4): 0.0}, 1)

    def test_recovers_training_graph(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            n = 30
            pairs = {tuple(sorted(rng.choice(n, 2, replace=False).tolist())) for _ in range(60)}
            w = rng.choice([0.25, 0.5, 1.0], size=len(pairs))
            train = Graph.from_edges([(a, b, x) for (a, b), x in zip(pairs, w)], n=n)
            for metric in ("RA2", "LocalPath"):
                s = similarity_scores(train, metric)
                pg = build_predicted_graph(train, s, 2)
                assert pg.graph.num_edges == train.num_edges + len(s)
                assert pg.observed_graph() == train
                u, v, wt = pg.graph.edges()
                pm = pg.predicted
                want = dict(zip(zip(s.u.tolist(), s.v.tolist()),
                                predicted_edge_weight(s.normalized, 2).tolist()))
                got = dict(zip(zip(u[pm].tolist(), v[pm].tolist()), wt[pm].tolist()))
                assert got == want

    def test_dump_with_provenance(self):
        pg = build_predicted_graph(chain(), {(0, 2): 0.5}, 1)
        text = write_weighted(pg.graph, provenance=pg.predicted)
        lines = [l.split() for l in text.splitlines() if not l.startswith("#")]
        assert ["0", "2", "0.5", "predicted"] in lines
        assert sum(l[3] == "observed" for l in lines) == 4
        assert parse_weighted(text) == pg.graph
