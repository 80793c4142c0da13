"""
Random Graphs Module

Erdős–Rényi sampling and Monte Carlo statistics.
"""

from .erdos_renyi import (
    ErdosRenyiParams,
    DegreeStats,
    sample_er,
    degree_stats,
    degrees_in_band,
    er_gap_trial,
    connectivity_threshold,
)

__all__ = [
    "ErdosRenyiParams",
    "DegreeStats",
    "sample_er",
    "degree_stats",
    "degrees_in_band",
    "er_gap_trial",
    "connectivity_threshold",
]
