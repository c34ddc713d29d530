"""Deterministic spread models producing fraction-infected curves.

simple
    ``v`` is infected by time ``t`` when some seed lies within total edge
    distance ``t``.
complex
    synchronous threshold model: ``v`` joins at step ``t`` when the weight
    from neighbours infected at ``t - 1`` reaches ``theta * s_v``.  Infected
    nodes stay infected, seeds count from ``t = 0``, and a node needs at
    least one infected neighbour (so ``theta = 0`` is hop-by-hop spread).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .graph import Graph, multi_source_distance

__all__ = ["ComplexParams", "SpreadCurve", "simulate_simple", "simulate_complex",
           "simulate", "infected_sets_simple", "infected_sets_complex"]

DEFAULT_THETA = 0.5
DEFAULT_HORIZON = 15


@dataclass(frozen=True)
class ComplexParams:
    theta: float = DEFAULT_THETA
    horizon: int = DEFAULT_HORIZON

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta {self.theta!r} outside [0, 1]")
        if self.horizon < 1:
            raise ValueError("horizon must be positive")


@dataclass(frozen=True, eq=False)
class SpreadCurve:
    """Fraction infected at t = 0..r."""

    fractions: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.fractions, dtype=float)
        if np.any(f < 0) or np.any(f > 1) or np.any(np.diff(f) < 0):
            raise AssertionError("spread curve must be nondecreasing within [0, 1]")
        object.__setattr__(self, "fractions", f)

    @property
    def horizon(self) -> int:
        return len(self.fractions) - 1

    def __len__(self):
        return len(self.fractions)

    def __getitem__(self, t):
        return self.fractions[t]

    def __eq__(self, other):
        if not isinstance(other, SpreadCurve):
            return NotImplemented
        return np.array_equal(self.fractions, other.fractions)

    __hash__ = None


def _seeds(g: Graph, seeds: Iterable[int]) -> np.ndarray:
    s = sorted({g.check_node(int(x)) for x in seeds})
    if not s:
        raise ValueError("at least one seed is required")
    return np.asarray(s, dtype=np.int64)


def infected_sets_simple(g: Graph, seeds: Iterable[int], r: int) -> list[frozenset[int]]:
    s = _seeds(g, seeds)
    dist = multi_source_distance(g, s.tolist(), cutoff=r)
    return [frozenset(v for v, d in dist.items() if d <= t) for t in range(r + 1)]


def simulate_simple(g: Graph, seeds: Iterable[int], r: int = DEFAULT_HORIZON) -> SpreadCurve:
    if r < 1:
        raise ValueError("horizon must be positive")
    s = _seeds(g, seeds)
    dist = np.fromiter(multi_source_distance(g, s.tolist(), cutoff=r).values(), dtype=float)
    counts = np.array([(dist <= t).sum() for t in range(r + 1)], dtype=float)
    return SpreadCurve(counts / g.n)


def _threshold_counts(g: Graph, s: np.ndarray, theta: float, r: int,
                      members: np.ndarray | None = None) -> np.ndarray:
    n = g.n
    own = members is None
    if own:
        members = np.empty(n, dtype=np.int64)
    return _kernels.threshold_spread(
        g.indptr, g.indices, g.weights, g.strengths, s, float(theta), int(r),
        np.zeros(n, dtype=np.bool_), np.zeros(n), np.empty(n, dtype=np.int64), members)


def infected_sets_complex(g: Graph, seeds: Iterable[int],
                          params: ComplexParams = ComplexParams()) -> list[frozenset[int]]:
    s = _seeds(g, seeds)
    members = np.empty(g.n, dtype=np.int64)
    counts = _threshold_counts(g, s, params.theta, params.horizon, members)
    return [frozenset(members[:c].tolist()) for c in counts]


def simulate_complex(g: Graph, seeds: Iterable[int],
                     params: ComplexParams = ComplexParams()) -> SpreadCurve:
    s = _seeds(g, seeds)
    counts = _threshold_counts(g, s, params.theta, params.horizon)
    return SpreadCurve(counts / g.n)


def simulate(g: Graph, seeds: Iterable[int], model: str, theta: float = DEFAULT_THETA,
             r: int = DEFAULT_HORIZON) -> SpreadCurve:
    if model == "simple":
        return simulate_simple(g, seeds, r)
    if model == "complex":
        return simulate_complex(g, seeds, ComplexParams(theta, r))
    raise ValueError(f"unknown contagion model {model!r}")
