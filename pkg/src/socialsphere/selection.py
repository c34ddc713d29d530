"""Top-k seed selection.

Every algorithm is deterministic: ties always go to the smaller node id.
"Degree" inside these heuristics means strength, so predicted edges count
in proportion to their probability; on a unit-weight graph this is the
ordinary degree.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .centrality import Centrality, rank_nodes
from .graph import Graph
from .ssm import PredictedGraph

__all__ = ["Algorithm", "SeedSet", "select_seeds", "voterank", "local_index", "lir",
           "graph_coloring", "joint_nomination", "k_highest"]

log = logging.getLogger(__name__)

_KINDS = ("KHighest", "VoteRank", "CentralityVoteRank", "LIR", "LIR2",
          "GraphColoring", "JointNomination")


@dataclass(frozen=True)
class Algorithm:
    """A selection algorithm, optionally pinned to a centrality.

    ``Algorithm.parse("voterank:Betweenness")`` gives the centrality-VoteRank
    variant that always uses betweenness, whatever the grid cell's
    centrality is.
    """

    kind: str
    centrality: Centrality | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown algorithm {self.kind!r}; expected one of {list(_KINDS)}")

    @classmethod
    def parse(cls, name: "str | Algorithm") -> "Algorithm":
        if isinstance(name, Algorithm):
            return name
        if ":" in name:
            head, tail = name.split(":", 1)
            if head.lower() != "voterank":
                raise ValueError(f"only voterank takes a centrality suffix, got {name!r}")
            tail = tail.strip()
            if tail in ("", "None"):
                return cls("VoteRank")
            return cls("CentralityVoteRank", Centrality.parse(tail))
        return cls(name)

    @property
    def name(self) -> str:
        if self.kind == "CentralityVoteRank" and self.centrality is not None:
            return f"voterank:{self.centrality.value}"
        return self.kind

    @property
    def uses_base(self) -> bool:
        return self.kind != "VoteRank"

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SeedSet:
    nodes: tuple[int, ...]
    k: int

    @property
    def truncated(self) -> bool:
        return len(self.nodes) < self.k

    def __iter__(self):
        return iter(self.nodes)

    def __len__(self):
        return len(self.nodes)


def _unit_scale(c: np.ndarray) -> np.ndarray:
    """Min-max to [0, 1]; a constant vector maps to all ones."""
    lo, hi = c.min(), c.max()
    if hi == lo:
        return np.ones_like(c, dtype=float)
    return (c - lo) / (hi - lo)


def k_highest(g: Graph, k: int, base: np.ndarray) -> list[int]:
    return rank_nodes(base)[:k]


def voterank(g: Graph, k: int, base: np.ndarray | None = None) -> list[int]:
    """VoteRank with strength-weighted votes.

    Each round the unselected node with the largest
    ``scale(v) * sum_u w(u, v) * ability(u)`` wins.  Its ability drops to 0
    and each neighbour ``u`` loses ``w(u, v) / <s>`` (mean strength),
    floored at 0, so a weak link suppresses only weakly.  On a unit-weight
    graph this is the usual ``1 / <k>`` update.  ``base`` (min-max scaled)
    gives the centrality variant; without it ``scale`` is 1.
    """
    n = g.n
    a = g.adjacency_matrix()
    ability = np.ones(n)
    mean_s = g.strengths.mean() if n else 0.0
    step = 1.0 / mean_s if mean_s > 0 else 0.0
    scale = np.ones(n) if base is None else _unit_scale(np.asarray(base, dtype=float))
    chosen = np.zeros(n, dtype=bool)
    out = []
    for _ in range(min(k, n)):
        votes = scale * (a @ ability)
        votes[chosen] = -np.inf
        v = int(np.argmax(votes))   # first maximum = smallest id
        out.append(v)
        chosen[v] = True
        ability[v] = 0.0
        row = slice(g.indptr[v], g.indptr[v + 1])
        nb = g.indices[row]
        ability[nb] = np.maximum(ability[nb] - step * g.weights[row], 0.0)
    return out


def local_index(g: Graph, two_hop: bool = False) -> np.ndarray:
    """Count of (one- or two-hop) neighbours with strictly larger strength."""
    s = g.strengths
    if two_hop:
        return _kernels.two_hop_higher(g.indptr, g.indices, s)
    rows = np.repeat(np.arange(g.n), g.degrees)
    out = np.zeros(g.n, dtype=np.int64)
    np.add.at(out, rows, (s[g.indices] > s[rows]).astype(np.int64))
    return out


def lir(g: Graph, k: int, base: np.ndarray, two_hop: bool = False) -> list[int]:
    """Local-index ranking.

    Nodes with local index 0 come first, ordered by ``base``; if there are
    fewer than ``k`` of them the rest follow by ascending local index, then
    descending ``base``.
    """
    li = local_index(g, two_hop)
    order = np.lexsort((np.arange(g.n), -np.asarray(base, dtype=float), li))
    return order[:k].tolist()


def graph_coloring(g: Graph, k: int, base: np.ndarray) -> list[int]:
    """Greedy colouring, then the best ``base`` nodes of the largest class.

    Nodes are coloured in descending strength order.  Classes are used from
    largest to smallest (ties: lower colour) until ``k`` seeds are taken.
    """
    n = g.n
    order = np.lexsort((np.arange(n), -g.strengths)).astype(np.int64)
    color = _kernels.greedy_coloring(g.indptr, g.indices, order)
    sizes = np.bincount(color)
    class_order = np.lexsort((np.arange(len(sizes)), -sizes))
    rank = np.empty(len(sizes), dtype=np.int64)
    rank[class_order] = np.arange(len(sizes))
    base = np.asarray(base, dtype=float)
    picks = np.lexsort((np.arange(n), -base, rank[color]))
    return picks[:k].tolist()


def joint_nomination(g: Graph, k: int, base: np.ndarray) -> list[int]:
    """Each node nominates its highest-``base`` neighbour; most nominated win.

    Ties go to higher ``base``, then smaller id.
    """
    base = np.asarray(base, dtype=float)
    pick = _kernels.best_neighbor(g.indptr, g.indices, base)
    votes = np.bincount(pick[pick >= 0], minlength=g.n)
    order = np.lexsort((np.arange(g.n), -base, -votes))
    return order[:k].tolist()


def select_seeds(g, alg, k: int, base: np.ndarray | None = None) -> SeedSet:
    """Pick ``k`` seeds from ``g`` (a :class:`Graph` or :class:`PredictedGraph`).

    ``base`` is the centrality vector for algorithms that use one; it
    defaults to strength.
    """
    if isinstance(g, PredictedGraph):
        g = g.graph
    alg = Algorithm.parse(alg)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > g.n:
        warnings.warn(f"k={k} exceeds the {g.n} nodes available; returning all of them",
                      RuntimeWarning, stacklevel=2)
    if base is None:
        base = g.strengths
    base = np.asarray(base, dtype=float)
    if len(base) != g.n:
        raise ValueError("base centrality has the wrong length")
    kind = alg.kind
    if kind == "KHighest":
        nodes = k_highest(g, k, base)
    elif kind == "VoteRank":
        nodes = voterank(g, k)
    elif kind == "CentralityVoteRank":
        nodes = voterank(g, k, base)
    elif kind == "LIR":
        nodes = lir(g, k, base)
    elif kind == "LIR2":
        nodes = lir(g, k, base, two_hop=True)
    elif kind == "GraphColoring":
        nodes = graph_coloring(g, k, base)
    else:
        nodes = joint_nomination(g, k, base)
    return SeedSet(tuple(int(x) for x in nodes), k)
