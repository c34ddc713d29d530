"""Similarity scores for non-adjacent node pairs.

Seven metrics are provided.  Each has a per-pair scorer, which is simple
and meant for spot checks, and all of them share one bulk path,
:func:`similarity_scores`, which works on sparse adjacency products and
is what the pipeline uses.

Common-neighbour weighting ("contribution" of a shared neighbour ``x``)::

    RA   1 / k_x          RA2   2 / k_x**2

with ``k_x`` replaced by the strength ``s_x`` when ``weighted=True``.
Local Path is ``(A^2)_uv + eps (A^3)_uv``; the quasi-local variants add
``eps * sum over u-x-y-v of c(x) c(y)`` to the base score.  For a
non-adjacent pair every length-3 walk is a path that does not revisit an
endpoint, so matrix powers count exactly the paths we want.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np
import scipy.sparse as sp

from .graph import Graph

__all__ = [
    "Metric",
    "AdjacentPairError",
    "SimilarityScores",
    "score_common_neighbors",
    "score_jaccard",
    "score_resource_allocation",
    "score_ra2",
    "score_local_path",
    "score_quasi_local",
    "score_pair",
    "normalize",
    "candidate_pairs",
    "similarity_scores",
]

DEFAULT_EPSILON = 0.01


class Metric(str, enum.Enum):
    CommonNeighbors = "CommonNeighbors"
    Jaccard = "Jaccard"
    ResourceAllocation = "ResourceAllocation"
    RA2 = "RA2"
    LocalPath = "LocalPath"
    QuasiLocalRA = "QuasiLocalRA"
    QuasiLocalRA2 = "QuasiLocalRA2"

    @classmethod
    def parse(cls, name: "str | Metric") -> "Metric":
        if isinstance(name, Metric):
            return name
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown metric {name!r}; expected one of "
                             f"{[m.value for m in cls]}") from None

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def uses_paths(self) -> bool:
        return self in (Metric.LocalPath, Metric.QuasiLocalRA, Metric.QuasiLocalRA2)


_LABELS = {
    Metric.CommonNeighbors: "Common Neighbors",
    Metric.Jaccard: "Jaccard",
    Metric.ResourceAllocation: "Resource Allocation",
    Metric.RA2: "RA-2",
    Metric.LocalPath: "Local Path",
    Metric.QuasiLocalRA: "Quasi-Local RA",
    Metric.QuasiLocalRA2: "Quasi-Local RA-2",
}


class AdjacentPairError(ValueError):
    pass


# -- per-pair scorers ---------------------------------------------------------

def _check_pair(g: Graph, u: int, v: int):
    g.check_node(u)
    g.check_node(v)
    if u == v:
        raise ValueError("a node is not scored against itself")
    if g.has_edge(u, v):
        raise AdjacentPairError(f"({u}, {v}) is already an edge")


def _common(g: Graph, u: int, v: int) -> set[int]:
    return set(g.adjacency_lists[u]) & set(g.adjacency_lists[v])


def _size(g: Graph, x: int, weighted: bool) -> float:
    return float(g.strengths[x]) if weighted else float(g.degrees[x])


def _contribution(g: Graph, x: int, base: str, weighted: bool) -> float:
    k = _size(g, x, weighted)
    if base == "RA":
        return 1.0 / k
    if base == "RA2":
        return 2.0 / (k * k)
    raise ValueError(f"unknown base {base!r}")


def score_common_neighbors(g: Graph, u: int, v: int) -> int:
    _check_pair(g, u, v)
    return len(_common(g, u, v))


def score_jaccard(g: Graph, u: int, v: int) -> float:
    _check_pair(g, u, v)
    nu, nv = set(g.adjacency_lists[u]), set(g.adjacency_lists[v])
    union = nu | nv
    return len(nu & nv) / len(union) if union else 0.0


def score_resource_allocation(g: Graph, u: int, v: int, weighted: bool = False) -> float:
    _check_pair(g, u, v)
    return math.fsum(_contribution(g, x, "RA", weighted) for x in sorted(_common(g, u, v)))


def score_ra2(g: Graph, u: int, v: int, weighted: bool = False) -> float:
    _check_pair(g, u, v)
    return math.fsum(_contribution(g, x, "RA2", weighted) for x in sorted(_common(g, u, v)))


def _paths3(g: Graph, u: int, v: int) -> Iterator[tuple[int, int]]:
    adj = g.adjacency_lists
    nv = set(adj[v])
    for x in adj[u]:
        if x == v:
            continue
        for y in adj[x]:
            if y != u and y != v and y in nv:
                yield x, y


def score_local_path(g: Graph, u: int, v: int, epsilon: float = DEFAULT_EPSILON) -> float:
    _check_pair(g, u, v)
    u, v = min(u, v), max(u, v)
    n2 = len(_common(g, u, v))
    n3 = sum(1 for _ in _paths3(g, u, v))
    return n2 + epsilon * n3


def score_quasi_local(g: Graph, u: int, v: int, base: str = "RA",
                      epsilon: float = DEFAULT_EPSILON, weighted: bool = False) -> float:
    _check_pair(g, u, v)
    u, v = min(u, v), max(u, v)     # fixed summation order keeps the score symmetric
    first = math.fsum(_contribution(g, x, base, weighted) for x in sorted(_common(g, u, v)))
    second = math.fsum(_contribution(g, x, base, weighted) * _contribution(g, y, base, weighted)
                 for x, y in _paths3(g, u, v))
    return first + epsilon * second


def score_pair(g: Graph, u: int, v: int, metric, epsilon: float = DEFAULT_EPSILON,
               weighted: bool = False) -> float:
    metric = Metric.parse(metric)
    if metric is Metric.CommonNeighbors:
        return float(score_common_neighbors(g, u, v))
    if metric is Metric.Jaccard:
        return score_jaccard(g, u, v)
    if metric is Metric.ResourceAllocation:
        return score_resource_allocation(g, u, v, weighted)
    if metric is Metric.RA2:
        return score_ra2(g, u, v, weighted)
    if metric is Metric.LocalPath:
        return score_local_path(g, u, v, epsilon)
    if metric is Metric.QuasiLocalRA:
        return score_quasi_local(g, u, v, "RA", epsilon, weighted)
    return score_quasi_local(g, u, v, "RA2", epsilon, weighted)


# -- normalisation ------------------------------------------------------------

def normalize(scores: Mapping, cap: float = 1.0) -> dict:
    """Divide by the largest raw score and scale into ``(0, cap]``.

    Zero scores are dropped.  An empty map gives an empty map.
    """
    if not 0.0 < cap <= 1.0:
        raise ValueError(f"cap {cap!r} outside (0, 1]")
    top = max(scores.values(), default=0.0)
    if top <= 0:
        return {}
    return {k: cap * (s / top) for k, s in scores.items() if s > 0}


# -- candidate pairs and bulk scoring -----------------------------------------

def _upper_pairs(m: sp.spmatrix, g: Graph) -> sp.coo_matrix:
    """Upper-triangle entries of ``m`` that are not edges of ``g``."""
    m = sp.triu(m, k=1).tocsr()
    m.eliminate_zeros()
    a = sp.triu(g.adjacency_matrix(weighted=False), k=1).tocsr()
    # drop existing edges: mask via elementwise product
    hit = m.multiply(a)
    if hit.nnz:
        m = (m - hit).tocsr()
        m.eliminate_zeros()
    return m.tocoo()


def _reach(g: Graph, hops: int) -> sp.csr_matrix:
    a = g.adjacency_matrix(weighted=False)
    r = a.copy()
    p = a
    for _ in range(hops - 1):
        p = (p @ a).tocsr()
        p.data[:] = 1.0
        r = r + p
    return r


def candidate_pairs(g: Graph, metric) -> Iterator[tuple[int, int]]:
    """Non-adjacent pairs ``u < v`` a metric can score.

    Neighbourhood metrics need a common neighbour; path metrics accept any
    pair within three hops.
    """
    metric = Metric.parse(metric)
    m = _upper_pairs(_reach(g, 3 if metric.uses_paths else 2), g)
    order = np.lexsort((m.col, m.row))
    for a, b in zip(m.row[order].tolist(), m.col[order].tolist()):
        if a != b:
            yield a, b


@dataclass
class SimilarityScores:
    """Raw and normalised scores for non-adjacent pairs.

    ``u``, ``v``, ``raw`` and ``normalized`` are aligned arrays sorted by
    ``(u, v)`` with ``u < v``.  Pairs whose raw score is zero are absent.
    """

    metric: Metric
    u: np.ndarray
    v: np.ndarray
    raw: np.ndarray
    normalized: np.ndarray
    cap: float = 1.0
    params: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.u)

    def raw_map(self) -> dict[tuple[int, int], float]:
        return {(a, b): s for a, b, s in zip(self.u.tolist(), self.v.tolist(), self.raw.tolist())}

    def normalized_map(self) -> dict[tuple[int, int], float]:
        return {(a, b): p for a, b, p in
                zip(self.u.tolist(), self.v.tolist(), self.normalized.tolist())}


def _contrib_vector(g: Graph, base: str, weighted: bool) -> np.ndarray:
    k = (g.strengths if weighted else g.degrees).astype(float)
    out = np.zeros(g.n)
    nz = k > 0
    out[nz] = 1.0 / k[nz] if base == "RA" else 2.0 / k[nz] ** 2
    return out


def _score_matrix(g: Graph, metric: Metric, epsilon: float, weighted: bool) -> sp.csr_matrix:
    a = g.adjacency_matrix(weighted=False).tocsr()
    if metric is Metric.CommonNeighbors:
        return (a @ a).tocsr()
    if metric is Metric.Jaccard:
        cn = sp.triu(a @ a, k=1).tocoo()
        k = g.degrees.astype(float)
        union = k[cn.row] + k[cn.col] - cn.data
        return sp.csr_matrix((cn.data / union, (cn.row, cn.col)), shape=a.shape)
    if metric is Metric.LocalPath:
        a2 = (a @ a).tocsr()
        return (a2 + epsilon * (a2 @ a)).tocsr()
    base = {Metric.ResourceAllocation: "RA", Metric.RA2: "RA2",
            Metric.QuasiLocalRA: "RA", Metric.QuasiLocalRA2: "RA2"}[metric]
    c = sp.diags(_contrib_vector(g, base, weighted))
    ac = (a @ c).tocsr()
    first = (ac @ a).tocsr()
    if metric in (Metric.ResourceAllocation, Metric.RA2):
        return first
    return (first + epsilon * ((ac @ ac) @ a)).tocsr()


def similarity_scores(g: Graph, metric, *, epsilon: float = DEFAULT_EPSILON,
                      weighted: bool = False, cap: float = 1.0) -> SimilarityScores:
    """Score every candidate pair of ``g`` and normalise."""
    metric = Metric.parse(metric)
    if not 0.0 < cap <= 1.0:
        raise ValueError(f"cap {cap!r} outside (0, 1]")
    m = _upper_pairs(_score_matrix(g, metric, epsilon, weighted), g)
    keep = (m.data > 0) & (m.row != m.col)
    row, col, raw = m.row[keep].astype(np.int64), m.col[keep].astype(np.int64), m.data[keep]
    order = np.lexsort((col, row))
    row, col, raw = row[order], col[order], raw[order]
    if len(raw):
        normed = cap * (raw / raw.max())
    else:
        normed = raw.copy()
    return SimilarityScores(metric, row, col, raw, normed, cap,
                            {"epsilon": epsilon, "weighted": weighted})
