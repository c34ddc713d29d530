"""Weighted undirected graph used throughout the package.

Nodes are dense integer ids ``0..n-1``; optional string labels carry the
original identifiers from an input file.  Edge weights are transmission
probabilities in ``(0, 1]`` and every edge has a distance ``1 / w``.

The graph is immutable.  Adjacency is held in CSR form (``indptr``,
``indices``, ``weights``) with each row sorted by neighbor id, which makes
both numpy-vectorised code and the numba kernels in :mod:`._kernels` cheap
to feed.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

__all__ = [
    "Graph",
    "UnknownNodeError",
    "PathAggregate",
    "neighbors",
    "degree_and_strength",
    "shortest_distance",
    "multi_source_distance",
    "path_aggregate",
]


class UnknownNodeError(KeyError):
    """Raised when a node id is not part of the graph."""

    def __init__(self, node):
        super().__init__(node)
        self.node = node

    def __str__(self):
        return f"unknown node id {self.node!r}"


class Graph:
    """Immutable weighted undirected simple graph.

    Parameters
    ----------
    n : int
        Number of nodes.
    u, v : array_like of int
        Edge endpoints.  Each undirected edge is listed once.
    w : array_like of float
        Edge weights in ``(0, 1]``.
    labels : sequence of str, optional
        External label of every node; defaults to ``str(id)``.
    info : mapping, optional
        Free-form metadata (ingest counters and the like).
    """

    def __init__(self, n: int, u, v, w, labels: Sequence[str] | None = None,
                 info: Mapping | None = None):
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        w = np.asarray(w, dtype=np.float64).ravel()
        if not (len(u) == len(v) == len(w)):
            raise ValueError("edge arrays must have equal length")
        n = int(n)
        if n < 0:
            raise ValueError("node count must be non-negative")
        if len(u):
            lo = min(u.min(), v.min())
            hi = max(u.max(), v.max())
            if lo < 0 or hi >= n:
                bad = int(hi) if hi >= n else int(lo)
                raise UnknownNodeError(bad)
            if np.any(u == v):
                i = int(np.flatnonzero(u == v)[0])
                raise ValueError(f"self-loop on node {int(u[i])}")
            if not np.all((w > 0.0) & (w <= 1.0)):
                i = int(np.flatnonzero(~((w > 0.0) & (w <= 1.0)))[0])
                raise ValueError(
                    f"edge ({int(u[i])}, {int(v[i])}) has weight {w[i]!r} outside (0, 1]")
            a, b = np.minimum(u, v), np.maximum(u, v)
            key = a * n + b
            if len(np.unique(key)) != len(key):
                raise ValueError("parallel edges are not allowed")

        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        vals = np.concatenate([w, w])
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)

        self.n = n
        self.indptr = indptr
        self.indices = cols.astype(np.int64)
        self.weights = vals
        for arr in (self.indptr, self.indices, self.weights):
            arr.setflags(write=False)
        if labels is None:
            labels = [str(i) for i in range(n)]
        elif len(labels) != n:
            raise ValueError("labels must have one entry per node")
        self.labels = tuple(str(x) for x in labels)
        self.info = dict(info or {})

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable, n: int | None = None,
                   labels: Sequence[str] | None = None, default_weight: float = 1.0) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples."""
        us, vs, ws = [], [], []
        for e in edges:
            us.append(e[0])
            vs.append(e[1])
            ws.append(e[2] if len(e) > 2 else default_weight)
        if n is None:
            n = (max(max(us), max(vs)) + 1) if us else 0
        return cls(n, us, vs, ws, labels=labels)

    def with_edges(self, u, v, w, info: Mapping | None = None) -> "Graph":
        """New graph on the same node set with the given edge list."""
        return Graph(self.n, u, v, w, labels=self.labels, info=info)

    # -- basic queries -------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.indices) // 2

    def __len__(self):
        return self.n

    def __contains__(self, v) -> bool:
        return isinstance(v, (int, np.integer)) and 0 <= v < self.n

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    def check_node(self, v) -> int:
        if v not in self:
            raise UnknownNodeError(v)
        return int(v)

    def neighbors_of(self, v: int) -> np.ndarray:
        v = self.check_node(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def weights_of(self, v: int) -> np.ndarray:
        v = self.check_node(v)
        return self.weights[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors_of(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def weight(self, u: int, v: int) -> float:
        row = self.neighbors_of(u)
        i = np.searchsorted(row, v)
        if i < len(row) and row[i] == v:
            return float(self.weights[self.indptr[u] + i])
        raise KeyError(f"no edge ({u}, {v})")

    def distance(self, u: int, v: int) -> float:
        return 1.0 / self.weight(u, v)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def strengths(self) -> np.ndarray:
        s = np.zeros(self.n)
        if self.n:
            rows = np.repeat(np.arange(self.n), self.degrees)
            np.add.at(s, rows, self.weights)
        return s

    @cached_property
    def adjacency_lists(self) -> list[list[int]]:
        """Python lists of neighbors, for pure-Python loops."""
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [ind[ptr[i]:ptr[i + 1]] for i in range(self.n)]

    @cached_property
    def weight_lists(self) -> list[list[float]]:
        ws = self.weights.tolist()
        ptr = self.indptr.tolist()
        return [ws[ptr[i]:ptr[i + 1]] for i in range(self.n)]

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Canonical edge arrays ``(u, v, w)`` with ``u < v``, sorted."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = rows < self.indices
        return rows[keep], self.indices[keep], self.weights[keep]

    def adjacency_matrix(self, weighted: bool = True) -> sp.csr_matrix:
        data = self.weights if weighted else np.ones_like(self.weights)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None


@dataclass(frozen=True)
class PathAggregate:
    """Total distance ``a(p)`` and total weight ``b(p)`` of a path.

    ``total_weight`` is provided for completeness; nothing in the pipeline
    consumes it.
    """

    length: int
    total_distance: float
    total_weight: float


def path_aggregate(g: Graph, path: Sequence[int]) -> PathAggregate:
    if len(path) == 0:
        raise ValueError("empty path")
    for v in path:
        g.check_node(v)
    a = b = 0.0
    for x, y in zip(path[:-1], path[1:]):
        w = g.weight(x, y)
        a += 1.0 / w
        b += w
    return PathAggregate(len(path) - 1, a, b)


def neighbors(g: Graph, v: int, order: int = 1) -> frozenset[int]:
    """Nodes within ``order`` unweighted hops of ``v``, excluding ``v``."""
    v = g.check_node(v)
    if order < 1:
        raise ValueError("order must be a positive integer")
    adj = g.adjacency_lists
    seen = {v}
    frontier = [v]
    for _ in range(order):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    seen.discard(v)
    return frozenset(seen)


def degree_and_strength(g: Graph, v: int) -> tuple[int, float]:
    v = g.check_node(v)
    return int(g.degrees[v]), float(math.fsum(g.weight_lists[v]))


def multi_source_distance(g: Graph, sources: Iterable[int],
                          cutoff: float | None = None) -> dict[int, float]:
    """Distance from the nearest source under ``d = 1/w`` (Dijkstra).

    Nodes farther than ``cutoff`` and unreachable nodes are omitted.  The
    heap is ordered by ``(distance, node id)`` so the settle order, and with
    it any predecessor structure, is deterministic.
    """
    adj = g.adjacency_lists
    wts = g.weight_lists
    dist: dict[int, float] = {}
    heap = []
    for s in sources:
        s = g.check_node(s)
        heap.append((0.0, s))
    heapq.heapify(heap)
    best = {s: 0.0 for _, s in heap}
    limit = math.inf if cutoff is None else float(cutoff)
    while heap:
        d, x = heapq.heappop(heap)
        if x in dist:
            continue
        dist[x] = d
        for y, w in zip(adj[x], wts[x]):
            if y in dist:
                continue
            nd = d + 1.0 / w
            if nd <= limit and nd < best.get(y, math.inf):
                best[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def shortest_distance(g: Graph, source: int, cutoff: float | None = None) -> dict[int, float]:
    """Single-source shortest distances ``D(source, .)``."""
    return multi_source_distance(g, [source], cutoff)
