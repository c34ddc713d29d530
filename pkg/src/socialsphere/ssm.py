"""Predicted-graph construction.

Every scored non-adjacent pair becomes a new edge whose weight is the
chance that the link forms within ``t`` unit intervals,
``w_t = 1 - (1 - p)**t``.  Observed edges are copied unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .graph import Graph
from .linkpred import SimilarityScores

__all__ = ["PredictedGraph", "StaleScoresError", "predicted_edge_weight", "build_predicted_graph"]


class StaleScoresError(ValueError):
    """A scored pair is already an edge of the training graph."""


def predicted_edge_weight(p, t: int):
    """``1 - (1 - p)**t``; accepts scalars or arrays of ``p``."""
    if t < 1 or int(t) != t:
        raise ValueError(f"horizon must be a positive integer, got {t!r}")
    arr = np.asarray(p, dtype=float)
    if np.any(~((arr > 0.0) & (arr <= 1.0))):
        raise ValueError("edge probabilities must lie in (0, 1]")
    # expm1/log1p keep precision for small p; p == 1 maps to exactly 1
    with np.errstate(divide="ignore"):
        out = -np.expm1(t * np.log1p(-arr))
    out = np.where(arr == 1.0, 1.0, out)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PredictedGraph:
    """Training graph plus predicted edges.

    ``predicted`` is a boolean mask aligned with ``graph.edges()``.
    """

    graph: Graph
    predicted: np.ndarray
    horizon: int

    @property
    def num_predicted(self) -> int:
        return int(self.predicted.sum())

    def observed_graph(self) -> Graph:
        u, v, w = self.graph.edges()
        keep = ~self.predicted
        return self.graph.with_edges(u[keep], v[keep], w[keep])


def _score_arrays(scores) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(scores, SimilarityScores):
        return scores.u, scores.v, scores.normalized
    if isinstance(scores, Mapping):
        keys = list(scores)
        u = np.array([min(k) for k in keys], dtype=np.int64)
        v = np.array([max(k) for k in keys], dtype=np.int64)
        p = np.array([scores[k] for k in keys], dtype=float)
        return u, v, p
    raise TypeError("scores must be SimilarityScores or a mapping of pairs to probabilities")


def build_predicted_graph(train: Graph, scores, horizon: int) -> PredictedGraph:
    """Add one edge per scored pair with weight ``w_t``.

    ``horizon == 0`` is the no-prediction case and returns the training
    graph unchanged.
    """
    if horizon == 0:
        tu, _, _ = train.edges()
        return PredictedGraph(train, np.zeros(len(tu), dtype=bool), 0)
    u, v, p = _score_arrays(scores)
    tu, tv, tw = train.edges()
    if len(u):
        if np.any(u == v):
            raise ValueError("self-pair in scores")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        adjacent = np.isin(lo * train.n + hi, tu * train.n + tv)
        if adjacent.any():
            i = int(np.flatnonzero(adjacent)[0])
            raise StaleScoresError(f"scored pair ({u[i]}, {v[i]}) is already an edge")
    wt = predicted_edge_weight(p, horizon) if len(p) else np.zeros(0)
    g = train.with_edges(np.concatenate([tu, u]), np.concatenate([tv, v]),
                         np.concatenate([tw, np.atleast_1d(wt)]), info=train.info)
    # recover the mask in canonical edge order
    gu, gv, _ = g.edges()
    mask = np.isin(gu * g.n + gv, np.minimum(u, v) * g.n + np.maximum(u, v))
    return PredictedGraph(g, mask, int(horizon))
