"""
Certify Module

Spectral-gap thresholds for Banach-space targets and the certification
pipeline for triangular presentations.
"""

from .thresholds import (
    FamilySpec,
    PRange,
    epsilon_lp,
    epsilon_isomorphic,
    epsilon_lp_sharp,
    epsilon_isomorphic_explicit,
    max_p_certified,
    parse_families,
)
from .formulas import (
    corollary14_ranges,
    confdim_lower_bound,
    theorem71_threshold,
    density_threshold,
    uniform_threshold,
    binomial_regime,
    density_condition,
)
from .certificate_graph_agent import Certificate, certify_presentation, certificate_graph_agent

__all__ = [
    "FamilySpec",
    "PRange",
    "epsilon_lp",
    "epsilon_isomorphic",
    "epsilon_lp_sharp",
    "epsilon_isomorphic_explicit",
    "max_p_certified",
    "parse_families",
    "corollary14_ranges",
    "confdim_lower_bound",
    "theorem71_threshold",
    "density_threshold",
    "uniform_threshold",
    "binomial_regime",
    "density_condition",
    "Certificate",
    "certify_presentation",
    "certificate_graph_agent",
]
