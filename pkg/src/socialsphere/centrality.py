"""Node centralities used as selection bases.

All functions return a float array indexed by node id; larger means more
central.  Path-based measures use the edge distance ``1/w``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph

__all__ = [
    "Centrality",
    "CentralityParams",
    "ConvergenceError",
    "centrality",
    "rank_nodes",
    "min_max",
    "degree_centrality",
    "betweenness_centrality",
    "closeness_centrality",
    "eigenvector_centrality",
    "pagerank",
    "leaderrank",
    "clusterrank",
    "localrank",
    "h_index",
    "core_number",
    "balanced_index",
    "complex_path_centrality",
    "clustering_coefficient",
]


class Centrality(str, enum.Enum):
    BalancedIndex = "BalancedIndex"
    Betweenness = "Betweenness"
    Closeness = "Closeness"
    ClusterRank = "ClusterRank"
    ComplexPathCentrality = "ComplexPathCentrality"
    Degree = "Degree"
    Eigenvector = "Eigenvector"
    HIndex = "HIndex"
    KCore = "KCore"
    LeaderRank = "LeaderRank"
    LocalRank = "LocalRank"
    PageRank = "PageRank"

    @classmethod
    def parse(cls, name: "str | Centrality") -> "Centrality":
        if isinstance(name, Centrality):
            return name
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown centrality {name!r}; expected one of "
                             f"{[c.value for c in cls]}") from None

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Centrality.BalancedIndex: "Balanced Index",
    Centrality.Betweenness: "Betweenness",
    Centrality.Closeness: "Closeness",
    Centrality.ClusterRank: "ClusterRank",
    Centrality.ComplexPathCentrality: "Complex Path Centrality",
    Centrality.Degree: "Degree",
    Centrality.Eigenvector: "Eigenvector",
    Centrality.HIndex: "H-index",
    Centrality.KCore: "k-core",
    Centrality.LeaderRank: "LeaderRank",
    Centrality.LocalRank: "LocalRank",
    Centrality.PageRank: "PageRank",
}


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class CentralityParams:
    """Tunables.  ``betweenness_samples`` switches to pivot sampling."""

    tol: float = 1e-8
    max_iter: int = 1000
    damping: float = 0.85
    balance: float = 0.5
    theta: float = 0.5
    horizon: int = 15
    betweenness_samples: int | None = None
    sample_seed: int = 0


def rank_nodes(scores) -> list[int]:
    """Node ids by descending score, ties by ascending id."""
    scores = np.asarray(scores, dtype=float)
    return np.lexsort((np.arange(len(scores)), -scores)).tolist()


def min_max(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if len(x) == 0:
        return x
    lo, hi = x.min(), x.max()
    if hi == lo:
        return np.zeros_like(x)
    return (x - lo) / (hi - lo)


def _dist(g: Graph) -> np.ndarray:
    return 1.0 / g.weights


def degree_centrality(g: Graph) -> np.ndarray:
    """Strength (weighted degree)."""
    return g.strengths.copy()


def betweenness_centrality(g: Graph, samples: int | None = None, seed: int = 0) -> np.ndarray:
    """Unnormalised shortest-path betweenness under ``d = 1/w``.

    Each unordered pair contributes once.  With ``samples`` set, that many
    pivot sources are drawn without replacement and the sum is rescaled
    by ``n / samples``.
    """
    n = g.n
    if samples is None or samples >= n:
        sources = np.arange(n, dtype=np.int64)
        scale = 0.5
    else:
        rng = np.random.default_rng(seed)
        sources = np.sort(rng.choice(n, size=samples, replace=False)).astype(np.int64)
        scale = 0.5 * n / samples
    bc = _kernels.betweenness(g.indptr, g.indices, _dist(g), sources)
    return bc * scale


def closeness_centrality(g: Graph) -> np.ndarray:
    """Harmonic closeness ``sum 1/D(v, u)``; unreachable nodes add nothing."""
    return _kernels.harmonic_closeness(g.indptr, g.indices, _dist(g))


def eigenvector_centrality(g: Graph, tol: float = 1e-8, max_iter: int = 1000) -> np.ndarray:
    """Power iteration on ``A + I`` (weighted), unit L2 norm.

    The identity shift keeps bipartite components from oscillating without
    changing the leading eigenvector.  Converged when the L1 change is
    below ``n * tol``.
    """
    n = g.n
    a = g.adjacency_matrix()
    x = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(max_iter):
        nxt = a @ x + x
        norm = np.linalg.norm(nxt)
        if norm == 0:
            return x
        nxt /= norm
        if np.abs(nxt - x).sum() < n * tol:
            return nxt
        x = nxt
    raise ConvergenceError(f"eigenvector centrality did not converge in {max_iter} iterations")


def pagerank(g: Graph, damping: float = 0.85, tol: float = 1e-8, max_iter: int = 1000) -> np.ndarray:
    """Weighted PageRank; dangling mass is spread uniformly.  Sums to 1."""
    n = g.n
    s = g.strengths
    a = g.adjacency_matrix()
    inv = np.zeros(n)
    inv[s > 0] = 1.0 / s[s > 0]
    dangling = s == 0
    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = damping * (a @ (x * inv))
        nxt += (damping * x[dangling].sum() + 1.0 - damping) / n
        nxt /= nxt.sum()
        if np.abs(nxt - x).sum() < tol:
            return nxt
        x = nxt
    raise ConvergenceError(f"PageRank did not converge in {max_iter} iterations")


def leaderrank(g: Graph, tol: float = 1e-8, max_iter: int = 1000) -> np.ndarray:
    """LeaderRank with a ground node tied to every node by unit-weight links.

    Walkers start with one unit on every real node; at the steady state
    the ground node's score is shared out evenly.
    """
    n = g.n
    if g.num_edges == 0:
        # the walk just bounces between ground and the nodes
        return np.ones(n)
    s = g.strengths + 1.0             # every node also links to ground
    a = g.adjacency_matrix()
    x = np.ones(n)
    ground = 0.0
    for _ in range(max_iter):
        share = x / s
        nxt = a @ share + ground / n
        nxt_ground = share.sum()
        change = np.abs(nxt - x).sum() + abs(nxt_ground - ground)
        x, ground = nxt, nxt_ground
        if change < tol * n:
            return x + ground / n
    raise ConvergenceError(f"LeaderRank did not converge in {max_iter} iterations")


def clustering_coefficient(g: Graph) -> np.ndarray:
    """Unweighted local clustering; zero for degree below two."""
    tri = _kernels.triangles(g.indptr, g.indices).astype(float)
    k = g.degrees.astype(float)
    pairs = k * (k - 1) / 2
    out = np.zeros(g.n)
    ok = pairs > 0
    out[ok] = tri[ok] / pairs[ok]
    return out


def clusterrank(g: Graph) -> np.ndarray:
    """``10**(-c_v) * sum over neighbours of (k_u + 1)``."""
    k = g.degrees.astype(float)
    rows = np.repeat(np.arange(g.n), g.degrees)
    nsum = np.zeros(g.n)
    np.add.at(nsum, rows, k[g.indices] + 1.0)
    return 10.0 ** (-clustering_coefficient(g)) * nsum


def localrank(g: Graph) -> np.ndarray:
    """Sum over neighbours ``w`` of ``Q(w)``, with ``Q(w)`` the sum over
    neighbours ``u`` of ``w`` of the size of ``u``'s two-hop ball."""
    n2 = _kernels.two_hop_sizes(g.indptr, g.indices).astype(float)
    rows = np.repeat(np.arange(g.n), g.degrees)
    q = np.zeros(g.n)
    np.add.at(q, rows, n2[g.indices])
    out = np.zeros(g.n)
    np.add.at(out, rows, q[g.indices])
    return out


def h_index(g: Graph) -> np.ndarray:
    k = g.degrees
    out = np.zeros(g.n)
    for v in range(g.n):
        nd = np.sort(k[g.indices[g.indptr[v]:g.indptr[v + 1]]])[::-1]
        h = 0
        for i, d in enumerate(nd, 1):
            if d >= i:
                h = i
            else:
                break
        out[v] = h
    return out


def core_number(g: Graph) -> np.ndarray:
    return _kernels.core_numbers(g.indptr, g.indices).astype(float)


def balanced_index(g: Graph, balance: float = 0.5) -> np.ndarray:
    """``balance * minmax(strength) + (1 - balance) * minmax(core number)``."""
    return balance * min_max(g.strengths) + (1.0 - balance) * min_max(core_number(g))


def complex_path_centrality(g: Graph, theta: float = 0.5, horizon: int = 15) -> np.ndarray:
    """Cascade size of the threshold model seeded at each node alone."""
    sizes = _kernels.single_seed_complex_sizes(g.indptr, g.indices, g.weights,
                                               g.strengths, float(theta), int(horizon))
    return sizes.astype(float)


def centrality(g: Graph, which, params: CentralityParams | None = None) -> np.ndarray:
    which = Centrality.parse(which)
    p = params or CentralityParams()
    if g.n == 0:
        raise ValueError("centrality of an empty graph")
    if which is Centrality.Degree:
        return degree_centrality(g)
    if which is Centrality.Betweenness:
        return betweenness_centrality(g, p.betweenness_samples, p.sample_seed)
    if which is Centrality.Closeness:
        return closeness_centrality(g)
    if which is Centrality.Eigenvector:
        return eigenvector_centrality(g, p.tol, p.max_iter)
    if which is Centrality.PageRank:
        return pagerank(g, p.damping, p.tol, p.max_iter)
    if which is Centrality.LeaderRank:
        return leaderrank(g, p.tol, p.max_iter)
    if which is Centrality.ClusterRank:
        return clusterrank(g)
    if which is Centrality.LocalRank:
        return localrank(g)
    if which is Centrality.HIndex:
        return h_index(g)
    if which is Centrality.KCore:
        return core_number(g)
    if which is Centrality.BalancedIndex:
        return balanced_index(g, p.balance)
    return complex_path_centrality(g, p.theta, p.horizon)
