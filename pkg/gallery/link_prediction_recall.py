"""
How many hidden edges does link prediction recover?
===================================================

Hide a share of a collaboration network's edges, score every non-adjacent
pair of the remaining graph, and check which of the hidden edges land
among the highest-scoring pairs.
"""
import numpy as np

from socialsphere import Metric, sample_training_graph, similarity_scores
from socialsphere.ingest import collaboration_graph

full = collaboration_graph(seed=1)
train = sample_training_graph(full, 0.7, rng=np.random.default_rng(5))
print(f"full graph:     {full.n} nodes, {full.num_edges} edges")
print(f"training graph: {train.n} nodes, {train.num_edges} edges")

# The hidden edges are whatever the full graph has and the sample lacks.
u, v, _ = full.edges()
hidden = {(a, b) for a, b in zip(u.tolist(), v.tolist()) if not train.has_edge(a, b)}
print(f"hidden edges:   {len(hidden)}\n")

# %%
# Each metric returns aligned arrays sorted by pair.  Ranking them by raw
# score and cutting at the number of hidden edges gives a precision.
print(f"{'metric':<20}{'pairs':>10}{'hits@|hidden|':>16}{'precision':>11}")
for metric in Metric:
    s = similarity_scores(train, metric)
    order = np.argsort(-s.raw, kind="stable")[:len(hidden)]
    hits = sum((int(s.u[i]), int(s.v[i])) in hidden for i in order)
    print(f"{metric.value:<20}{len(s):>10}{hits:>16}{hits / len(hidden):>11.3f}")

# %%
# Scores live on very different scales, so the predicted graph uses the
# normalised column, which puts the best pair of every metric at 1.
s = similarity_scores(train, "RA2")
print("\nRA2 raw range:        ", s.raw.min(), s.raw.max())
print("RA2 normalised range: ", s.normalized.min(), s.normalized.max())
