"""
Poincare Module

p-Poincaré constants, the p-Laplacian and the L^p bounds built on spectral gaps.
"""

from .lp_tools import signed_power, mazur_map, p_mean, lp_center
from .ratio import poincare_ratio, bipartite_poincare_ratio, find_bipartition
from .estimator import (
    PoincareEstimate,
    poincare2_closed_form,
    bipartite_poincare2_closed_form,
    poincare_estimate,
    bipartite_poincare_estimate,
)
from .p_laplacian import PLaplacianReport, p_laplacian_apply, lambda1p_report, theorem37_lower
from .operator_bounds import (
    markov_lp_norm_bounds,
    theorem32_constant,
    uniform_convexity_constant,
    mean_zero_poincare_check,
    matousek_ratio_scan,
)

__all__ = [
    "signed_power",
    "mazur_map",
    "p_mean",
    "lp_center",
    "poincare_ratio",
    "bipartite_poincare_ratio",
    "find_bipartition",
    "PoincareEstimate",
    "poincare2_closed_form",
    "bipartite_poincare2_closed_form",
    "poincare_estimate",
    "bipartite_poincare_estimate",
    "PLaplacianReport",
    "p_laplacian_apply",
    "lambda1p_report",
    "theorem37_lower",
    "markov_lp_norm_bounds",
    "theorem32_constant",
    "uniform_convexity_constant",
    "mean_zero_poincare_check",
    "matousek_ratio_scan",
]
