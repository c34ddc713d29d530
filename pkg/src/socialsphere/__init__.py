"""Future-influencer prediction on partially observed networks.

Link prediction fills in likely edges, a centrality-driven top-k
heuristic picks seeds on the completed graph, and deterministic contagion
on the full network scores how well those seeds stand in for the ones a
complete view would have chosen.
"""
__version__ = "0.1.0"

from .graph import Graph, UnknownNodeError, neighbors, degree_and_strength, shortest_distance
from .ingest import parse_snap, parse_weighted, read_graph, sample_training_graph, SamplingConfig
from .linkpred import Metric, SimilarityScores, similarity_scores, normalize, candidate_pairs
from .ssm import PredictedGraph, build_predicted_graph, predicted_edge_weight
from .centrality import Centrality, CentralityParams, centrality, rank_nodes
from .selection import Algorithm, SeedSet, select_seeds
from .contagion import ComplexParams, SpreadCurve, simulate_simple, simulate_complex
from .evaluation import mse, overlap, ground_truth_seeds, latent_influencer_report

__all__ = [
    "Graph", "UnknownNodeError", "neighbors", "degree_and_strength", "shortest_distance",
    "parse_snap", "parse_weighted", "read_graph", "sample_training_graph", "SamplingConfig",
    "Metric", "SimilarityScores", "similarity_scores", "normalize", "candidate_pairs",
    "PredictedGraph", "build_predicted_graph", "predicted_edge_weight",
    "Centrality", "CentralityParams", "centrality", "rank_nodes",
    "Algorithm", "SeedSet", "select_seeds",
    "ComplexParams", "SpreadCurve", "simulate_simple", "simulate_complex",
    "mse", "overlap", "ground_truth_seeds", "latent_influencer_report",
]
