"""
Union of two graphs on one vertex set and the two perturbation bounds
for the spectral gap of ω₁ + ω₂.
"""

import logging

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel

from src.graph_core.spectral import spectral_report
from src.graph_core.weighted_graph import WeightedGraph
from src.utils.errors import SizeMismatch

# Configure logging
logger = logging.getLogger(__name__)

SLACK = 1e-12


class PerturbationCheck(BaseModel):
    delta_prime: float
    norm_g1: float
    norm_union: float
    lhs: float
    holds: bool
    sharp_lhs: float
    sharp_holds: bool


class UnionGapBound(BaseModel):
    delta: float
    bound: float
    norm_sum: float
    holds: bool
    lower_bound: float
    union_min_eigenvalue: float
    lower_holds: bool


def union(g1: WeightedGraph, g2: WeightedGraph) -> WeightedGraph:
    """Pointwise weight sum ω₁ + ω₂"""
    if g1.n != g2.n:
        raise SizeMismatch(f"cannot unite graphs on {g1.n} and {g2.n} vertices")
    return WeightedGraph(n=g1.n, weights=sp.csr_matrix(g1.weights + g2.weights))


def perturbation_bound_check(g1: WeightedGraph, g2: WeightedGraph) -> PerturbationCheck:
    """
    Compare ‖A⁰‖ of g1 and g1 ∪ g2 against δ′ = max d₂/d₁.

    Also evaluates the sharper two-sided form
    |‖A⁰₁₊₂‖ − ‖A⁰₁‖/(1+δ′)| ≤ δ′/(1+δ′).
    """
    d1 = g1.require_no_isolated()
    united = union(g1, g2)
    delta_prime = float(np.max(g2.degrees() / d1))

    norm_g1 = spectral_report(g1).restricted_norm
    norm_union = spectral_report(united).restricted_norm
    lhs = abs(norm_union - norm_g1)
    sharp_lhs = abs(norm_union - norm_g1 / (1.0 + delta_prime))

    return PerturbationCheck(
        delta_prime=delta_prime,
        norm_g1=norm_g1,
        norm_union=norm_union,
        lhs=lhs,
        holds=lhs <= delta_prime + SLACK,
        sharp_lhs=sharp_lhs,
        sharp_holds=sharp_lhs <= delta_prime / (1.0 + delta_prime) + SLACK,
    )


def degree_imbalance(*degree_vectors: np.ndarray) -> float:
    """δ = Σ_i Σ_s |d_i(s) − D_i/|V|| / D_i"""
    delta = 0.0
    for degrees in degree_vectors:
        total = degrees.sum()
        delta += float(np.sum(np.abs(degrees - total / degrees.size)) / total)
    return delta


def union_gap_bound(g1: WeightedGraph, g2: WeightedGraph) -> UnionGapBound:
    """Check ‖A⁰_{ω₁+ω₂}‖ ≤ min(1, δ + (1−δ)·max(‖A⁰₁‖, ‖A⁰₂‖))"""
    d1 = g1.require_no_isolated()
    d2 = g2.require_no_isolated()
    united = union(g1, g2)

    delta = degree_imbalance(d1, d2)
    report1, report2 = spectral_report(g1), spectral_report(g2)
    report_union = spectral_report(united)

    bound = min(1.0, delta + (1.0 - delta) * max(report1.restricted_norm, report2.restricted_norm))
    lower_bound = min(report1.mu_min, report2.mu_min)

    result = UnionGapBound(
        delta=delta,
        bound=bound,
        norm_sum=report_union.restricted_norm,
        holds=report_union.restricted_norm <= bound + SLACK,
        lower_bound=lower_bound,
        union_min_eigenvalue=report_union.mu_min,
        lower_holds=report_union.mu_min >= lower_bound - SLACK,
    )
    if not result.holds:
        logger.warning(f"Union gap bound violated: {result.norm_sum} > {result.bound}")
    return result
