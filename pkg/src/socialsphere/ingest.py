"""Edge-list readers/writers and training-graph sampling.

Two text formats are understood:

* SNAP: ``#`` comment lines, data lines ``FromNodeId<TAB>ToNodeId``.  The
  collaboration files list each coauthorship in both directions; the
  reciprocal pair collapses to one undirected edge.
* weighted: ``u v w`` with ``w`` in ``(0, 1]``, ``#`` comments.

Labels are remapped to dense ids in order of first appearance.
"""
from __future__ import annotations

import io
import logging
import math
import os
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .graph import Graph

__all__ = [
    "ParseError",
    "SamplingConfig",
    "parse_snap",
    "parse_weighted",
    "read_graph",
    "write_snap",
    "write_weighted",
    "sample_training_graph",
    "collaboration_graph",
]

log = logging.getLogger(__name__)


class ParseError(ValueError):
    """Malformed input line; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _lines(text) -> Iterable[str]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if isinstance(text, str):
        return io.StringIO(text)
    if isinstance(text, io.TextIOBase):
        return text
    return io.TextIOWrapper(text, encoding="utf-8")


class _Builder:
    def __init__(self):
        self.ids: dict[str, int] = {}
        self.labels: list[str] = []
        self.edges: dict[tuple[int, int], float] = {}
        self.self_loops = 0
        self.duplicates = 0

    def node(self, label: str) -> int:
        i = self.ids.get(label)
        if i is None:
            i = self.ids[label] = len(self.labels)
            self.labels.append(label)
        return i

    def graph(self, fmt: str) -> Graph:
        keys = list(self.edges)
        u = [k[0] for k in keys]
        v = [k[1] for k in keys]
        w = list(self.edges.values())
        info = {"format": fmt, "self_loops": self.self_loops,
                "duplicates": self.duplicates}
        g = Graph(len(self.labels), u, v, w, labels=self.labels, info=info)
        log.info("parsed %s graph: %d nodes, %d edges (%d self-loops dropped, %d duplicates)",
                 fmt, g.n, g.num_edges, self.self_loops, self.duplicates)
        return g


def parse_snap(text, default_weight: float = 1.0) -> Graph:
    """Parse a SNAP edge list; every edge gets ``default_weight``.

    Self-loops are dropped (counted in ``graph.info["self_loops"]``) and
    reciprocal or repeated pairs collapse to a single undirected edge.
    """
    if not 0.0 < default_weight <= 1.0:
        raise ValueError(f"default weight {default_weight!r} outside (0, 1]")
    b = _Builder()
    for lineno, line in enumerate(_lines(text), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two node labels, got {len(parts)} fields")
        x, y = b.node(parts[0]), b.node(parts[1])
        if x == y:
            b.self_loops += 1
            continue
        key = (x, y) if x < y else (y, x)
        if key in b.edges:
            b.duplicates += 1
        else:
            b.edges[key] = default_weight
    return b.graph("snap")


def parse_weighted(text) -> Graph:
    """Parse ``u v w`` lines.  Repeats must agree on the weight."""
    b = _Builder()
    for lineno, line in enumerate(_lines(text), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        # a fourth column (edge provenance) is tolerated and ignored
        if len(parts) not in (3, 4):
            raise ParseError(lineno, f"expected 'u v w', got {len(parts)} fields")
        try:
            w = float(parts[2])
        except ValueError:
            raise ParseError(lineno, f"bad weight {parts[2]!r}") from None
        if not 0.0 < w <= 1.0:
            raise ParseError(lineno, f"weight {w!r} outside (0, 1]")
        x, y = b.node(parts[0]), b.node(parts[1])
        if x == y:
            b.self_loops += 1
            continue
        key = (x, y) if x < y else (y, x)
        old = b.edges.get(key)
        if old is not None:
            if old != w:
                raise ParseError(lineno, f"conflicting weights {old!r} and {w!r} "
                                         f"for edge ({parts[0]}, {parts[1]})")
            b.duplicates += 1
        else:
            b.edges[key] = w
    return b.graph("weighted")


def read_graph(path: str | os.PathLike, fmt: str = "snap", default_weight: float = 1.0) -> Graph:
    opener = open
    if str(path).endswith(".gz"):
        import gzip
        opener = gzip.open
    with opener(path, "rt", encoding="utf-8") as fh:
        if fmt == "snap":
            return parse_snap(fh, default_weight)
        if fmt == "weighted":
            return parse_weighted(fh)
    raise ValueError(f"unknown format {fmt!r}")


def write_snap(g: Graph, fh: IO[str] | None = None) -> str | None:
    """Serialise as a SNAP edge list (one line per undirected edge).

    Isolated nodes cannot be represented and are lost on a round trip.
    """
    u, v, _ = g.edges()
    lab = g.labels
    lines = [f"# Nodes: {g.n} Edges: {g.num_edges}\n"]
    lines.extend(f"{lab[a]}\t{lab[b]}\n" for a, b in zip(u.tolist(), v.tolist()))
    out = "".join(lines)
    if fh is None:
        return out
    fh.write(out)
    return None


def write_weighted(g: Graph, fh: IO[str] | None = None,
                   provenance: np.ndarray | None = None) -> str | None:
    """Serialise as ``u v w`` lines; ``provenance`` adds a fourth column.

    ``provenance`` is a boolean array aligned with :meth:`Graph.edges`,
    true for predicted edges.
    """
    u, v, w = g.edges()
    lab = g.labels
    lines = [f"# Nodes: {g.n} Edges: {g.num_edges}\n"]
    if provenance is None:
        lines.extend(f"{lab[a]} {lab[b]} {x!r}\n"
                     for a, b, x in zip(u.tolist(), v.tolist(), w.tolist()))
    else:
        tags = np.where(provenance, "predicted", "observed")
        lines.extend(f"{lab[a]} {lab[b]} {x!r} {t}\n"
                     for a, b, x, t in zip(u.tolist(), v.tolist(), w.tolist(), tags))
    out = "".join(lines)
    if fh is None:
        return out
    fh.write(out)
    return None


@dataclass(frozen=True)
class SamplingConfig:
    retain_fraction: float
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.retain_fraction <= 1.0:
            raise ValueError(f"retain_fraction {self.retain_fraction!r} outside (0, 1]")


def retained_edge_count(fraction: float, m: int) -> int:
    """``round(fraction * m)`` with halves rounded up."""
    return int(math.floor(fraction * m + 0.5))


def sample_training_graph(g: Graph, cfg: SamplingConfig | float,
                          rng: np.random.Generator | int | None = None) -> Graph:
    """Keep a uniform random subset of edges; every node is kept.

    ``cfg`` may be a :class:`SamplingConfig` or a bare fraction, in which
    case ``rng`` supplies the randomness.
    """
    if not isinstance(cfg, SamplingConfig):
        cfg = SamplingConfig(float(cfg), 0)
        gen = np.random.default_rng(rng)
    else:
        gen = np.random.default_rng(cfg.rng_seed if rng is None else rng)
    if g.n == 0:
        raise ValueError("cannot sample an empty graph")
    u, v, w = g.edges()
    m = len(u)
    keep = retained_edge_count(cfg.retain_fraction, m)
    if keep >= m:
        idx = np.arange(m)
    else:
        idx = np.sort(gen.choice(m, size=keep, replace=False))
    info = dict(g.info, sampled_fraction=cfg.retain_fraction)
    return g.with_edges(u[idx], v[idx], w[idx], info=info)


def collaboration_graph(n_authors: int = 5242, n_edges: int = 14496, *,
                        team_exponent: float = 2.7, max_team: int = 24,
                        seed: int = 0, weight: float = 1.0) -> Graph:
    """Synthetic coauthorship network built from random papers.

    Each paper draws a Zipf-distributed team size and recruits authors with
    probability proportional to ``1 + papers written``; every team becomes a
    clique.  Until every author has written a paper, each new paper also
    includes one first-time author.  Papers are added until ``n_edges``
    distinct edges exist (the last paper may overshoot and is trimmed).
    The defaults give a sparse, clustered, fragmented graph of the size of
    the arXiv GR-QC coauthorship network, used as a stand-in when that
    file is unavailable.
    """
    rng = np.random.default_rng(seed)
    activity = np.ones(n_authors)
    edges: dict[tuple[int, int], None] = {}
    newcomers = iter(rng.permutation(n_authors).tolist())
    while len(edges) < n_edges:
        size = min(int(rng.zipf(team_exponent)), max_team) + 1
        lead = next(newcomers, None)
        pool = rng.choice(n_authors, size=size, p=activity / activity.sum())
        team = np.unique(pool if lead is None else np.append(pool[:size - 1], lead))
        for i in range(len(team)):
            for j in range(i + 1, len(team)):
                edges.setdefault((int(team[i]), int(team[j])), None)
                if len(edges) >= n_edges:
                    break
            if len(edges) >= n_edges:
                break
        activity[team] += 1.0
    keys = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
    return Graph(n_authors, keys[:, 0], keys[:, 1], np.full(len(keys), weight),
                 info={"format": "synthetic", "seed": seed})
