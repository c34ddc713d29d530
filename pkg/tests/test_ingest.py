import gzip
import io
import time

import numpy as np
import pytest

from socialsphere import Graph
from socialsphere.ingest import (ParseError, SamplingConfig, collaboration_graph, parse_snap,
                                 parse_weighted, read_graph, retained_edge_count,
                                 sample_training_graph, write_snap, write_weighted)


def edge_set(g):
    u, v, w = g.edges()
    lab = g.labels
    return {(frozenset((lab[a], lab[b])), x) for a, b, x in zip(u.tolist(), v.tolist(), w.tolist())}


class TestSnap:
    def test_reciprocal_pair_collapses(self):
        g = parse_snap("# c\n1\t2\n2\t1\n2\t3\n")
        assert (g.n, g.num_edges) == (3, 2)
        assert g.info["duplicates"] == 1

    def test_self_loop_counted(self):
        g = parse_snap("1\t1\n")
        assert (g.n, g.num_edges) == (1, 0)
        assert g.info["self_loops"] == 1

    def test_empty_input(self):
        g = parse_snap("")
        assert (g.n, g.num_edges) == (0, 0)

    def test_malformed_line(self):
        with pytest.raises(ParseError) as e:
            parse_snap("# ok\n1\t2\n3\n")
        assert e.value.lineno == 3

    def test_default_weight(self):
        g = parse_snap("a b\n", default_weight=0.5)
        assert g.weight(0, 1) == 0.5
        with pytest.raises(ValueError):
            parse_snap("a b\n", default_weight=0.0)

    def test_labels_in_order_of_appearance(self):
        g = parse_snap("10\t3\n3\t7\n")
        assert g.labels == ("10", "3", "7")

    def test_bytes_and_streams(self):
        text = "1\t2\n2\t3\n"
        a = parse_snap(text)
        assert parse_snap(text.encode()) == a
        assert parse_snap(io.BytesIO(text.encode())) == a

    def test_idempotent_on_own_output(self):
        g = parse_snap("5\t9\n9\t5\n9\t2\n2\t7\n7\t5\n")
        once = write_snap(g)
        g2 = parse_snap(once)
        assert edge_set(g2) == edge_set(g)
        assert write_snap(parse_snap(write_snap(g2))) == write_snap(g2)

    def test_round_trip_random(self):
        rng = np.random.default_rng(4)
        lines = [f"{a}\t{b}" for a, b in rng.integers(0, 60, size=(200, 2))]
        g = parse_snap("\n".join(lines))
        assert edge_set(parse_snap(write_snap(g))) == edge_set(g)


class TestWeighted:
    def test_single_edge(self):
        g = parse_weighted("1 2 0.5")
        assert g.weight(0, 1) == 0.5
        assert g.distance(0, 1) == 2.0

    def test_duplicate_agrees(self):
        assert parse_weighted("1 2 0.5\n2 1 0.5").num_edges == 1

    def test_range_error(self):
        with pytest.raises(ParseError, match="outside"):
            parse_weighted("1 2 1.5")

    def test_conflict(self):
        with pytest.raises(ParseError, match="conflicting"):
            parse_weighted("1 2 0.5\n2 1 0.25")

    def test_bad_number(self):
        with pytest.raises(ParseError):
            parse_weighted("1 2 x")

    def test_provenance_column_round_trip(self):
        g = parse_weighted("a b 0.5\nb c 1.0\n")
        text = write_weighted(g, provenance=np.array([True, False]))
        assert "predicted" in text and "observed" in text
        assert edge_set(parse_weighted(text)) == edge_set(g)


def test_read_graph_plain_and_gz(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# x\n1\t2\n2\t3\n")
    gz = tmp_path / "g.txt.gz"
    with gzip.open(gz, "wt") as fh:
        fh.write(p.read_text())
    assert read_graph(p) == read_graph(gz)
    with pytest.raises(ValueError):
        read_graph(p, fmt="json")


class TestSampling:
    def test_rounding(self):
        g = Graph.from_edges([(i, i + 1) for i in range(10)])
        assert sample_training_graph(g, SamplingConfig(0.7, 1)).num_edges == 7
        assert retained_edge_count(0.25, 10) == 3      # 2.5 rounds up
        assert retained_edge_count(0.7, 14496) == 10147

    def test_identity(self):
        g = Graph.from_edges([(i, i + 1, 0.5) for i in range(10)])
        assert sample_training_graph(g, SamplingConfig(1.0, 3)) == g

    def test_deterministic(self):
        g = collaboration_graph(200, 500, seed=1)
        a = sample_training_graph(g, SamplingConfig(0.5, 42))
        b = sample_training_graph(g, SamplingConfig(0.5, 42))
        c = sample_training_graph(g, SamplingConfig(0.5, 43))
        assert a == b
        assert a != c

    def test_subset_and_nodes_kept(self):
        g = collaboration_graph(300, 800, seed=2)
        s = sample_training_graph(g, 0.3, rng=5)
        assert s.n == g.n
        assert s.num_edges == retained_edge_count(0.3, g.num_edges)
        assert edge_set(s) <= edge_set(g)

    def test_bad_fraction(self):
        with pytest.raises(ValueError):
            SamplingConfig(0.0)
        with pytest.raises(ValueError):
            sample_training_graph(Graph(0, [], [], []), 0.5)


def test_synthetic_stand_in_shape():
    g = collaboration_graph()
    assert (g.n, g.num_edges) == (5242, 14496)
    assert g == collaboration_graph()
    assert 0 < (g.degrees == 0).sum() < g.n // 5


def test_grqc_counts(grqc_path):
    t0 = time.perf_counter()
    g = read_graph(grqc_path)
    assert time.perf_counter() - t0 < 5.0
    assert (g.n, g.num_edges) == (5242, 14496)
