"""
Graph Core Module

Weighted graphs, random walk measures, the Markov operator and its spectrum.
"""

from .weighted_graph import WeightedGraph, RandomWalkMeasures, build_graph, measures, markov_apply
from .spectral import SpectralReport, spectral_report, markov_eigenpairs, generalized_spectrum_check
from .union_bounds import union, perturbation_bound_check, union_gap_bound
from .graph_io import load_graph, save_graph

__all__ = [
    "WeightedGraph",
    "RandomWalkMeasures",
    "build_graph",
    "measures",
    "markov_apply",
    "SpectralReport",
    "spectral_report",
    "markov_eigenpairs",
    "generalized_spectrum_check",
    "union",
    "perturbation_bound_check",
    "union_gap_bound",
    "load_graph",
    "save_graph",
]
