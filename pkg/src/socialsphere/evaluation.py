"""Comparing predicted influencers with the ones chosen on the full graph."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .centrality import rank_nodes
from .contagion import SpreadCurve, simulate_simple
from .graph import Graph
from .selection import SeedSet, select_seeds

__all__ = ["EvaluationResult", "LatentReport", "mse", "overlap", "ground_truth_seeds",
           "evaluate", "curve_verdict", "latent_influencer_report"]


def _values(c) -> np.ndarray:
    return np.asarray(c.fractions if isinstance(c, SpreadCurve) else c, dtype=float)


def mse(pred, obs) -> float:
    """Mean of ``(O(t) - P(t))**2`` over t = 1..r; the t = 0 point is skipped."""
    p, o = _values(pred), _values(obs)
    if len(p) != len(o):
        raise ValueError(f"curve lengths differ ({len(p)} vs {len(o)})")
    if len(p) < 2:
        raise ValueError("curves need at least one step after t = 0")
    d = o[1:] - p[1:]
    return float(np.mean(d * d))


def overlap(pred, truth, k: int | None = None) -> float:
    """``|pred & truth| / k``; ``k`` defaults to the larger declared size."""
    if k is None:
        ks = [s.k if isinstance(s, SeedSet) else len(s) for s in (pred, truth)]
        k = max(ks)
    if k <= 0:
        raise ValueError("k must be positive")
    return len(set(pred) & set(truth)) / k


def ground_truth_seeds(full: Graph, alg, k: int, base: np.ndarray | None = None) -> SeedSet:
    """The same algorithm applied to the complete graph."""
    return select_seeds(full, alg, k, base)


@dataclass(frozen=True)
class EvaluationResult:
    mse: float
    overlap_accuracy: float
    predicted_curve: SpreadCurve
    observed_curve: SpreadCurve


def evaluate(pred: SeedSet, truth: SeedSet, pred_curve: SpreadCurve,
             obs_curve: SpreadCurve) -> EvaluationResult:
    return EvaluationResult(mse(pred_curve, obs_curve), overlap(pred, truth),
                            pred_curve, obs_curve)


def curve_verdict(pred, obs) -> str:
    """``"dominates"``, ``"matches"``, ``"dominated"`` or ``"crossing"``.

    Domination means pointwise ``>=`` with at least one strict step.
    """
    p, o = _values(pred), _values(obs)
    if np.array_equal(p, o):
        return "matches"
    if np.all(p >= o):
        return "dominates"
    if np.all(p <= o):
        return "dominated"
    return "crossing"


@dataclass(frozen=True)
class LatentReport:
    latent: tuple[int, ...]          # predicted seeds outside the training top-k
    verdict: str
    predicted_curve: SpreadCurve
    truth_curve: SpreadCurve

    @property
    def dominates(self) -> bool:
        return self.verdict == "dominates"


def latent_influencer_report(train: Graph, full: Graph, pred: SeedSet, truth: SeedSet,
                             base: Sequence[float],
                             spread: Callable[[Graph, Sequence[int]], SpreadCurve] | None = None
                             ) -> LatentReport:
    """Flag predicted seeds that were not top-k in the observed graph.

    ``base`` is the centrality of the training graph.  Both seed sets are
    spread on ``full`` (simple contagion unless ``spread`` is given) and the
    resulting curves compared.
    """
    spread = spread or simulate_simple
    top = set(rank_nodes(base)[:len(pred)])
    latent = tuple(v for v in pred if v not in top)
    pc = spread(full, list(pred))
    tc = spread(full, list(truth))
    return LatentReport(latent, curve_verdict(pc, tc), pc, tc)
