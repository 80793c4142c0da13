"""
p-Laplacian

Δ_p f(s) = (1/d(s)) Σ_t ω(s,t) {f(s) − f(t)}^{p−1}, and bounds on its first
nonzero eigenvalue through λ_{1,p} = 1/(2π^p).
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel

from src.graph_core.spectral import spectral_report
from src.graph_core.weighted_graph import WeightedGraph, as_vertex_function
from src.poincare.estimator import poincare_estimate, require_connected
from src.poincare.lp_tools import signed_power
from src.utils.errors import BadParameter, ShapeMismatch

# Configure logging
logger = logging.getLogger(__name__)

GAP_MATCH_TOL = 1e-9


class PLaplacianReport(BaseModel):
    p: float
    lambda_1p_upper: float
    theorem37_lower: float = 0.0  # trivial bound when no gap is supplied
    poincare_lower: float


def p_laplacian_apply(g: WeightedGraph, f, p: float) -> np.ndarray:
    if p <= 1:
        raise BadParameter(f"p must exceed 1, got {p}")
    values = as_vertex_function(g, f)
    if values.ndim == 2:
        if values.shape[1] != 1:
            raise ShapeMismatch(f"p-Laplacian acts on scalar functions, got shape {values.shape}")
        values = values[:, 0]
    degrees = g.require_no_isolated()
    rows, cols, weights = g.ordered_edges()
    terms = weights * signed_power(values[rows] - values[cols], p - 1.0)
    return np.bincount(rows, weights=terms, minlength=g.n) / degrees


def theorem37_lower(p: float, gap: float) -> float:
    """(1 − 2^{1−2/p} gap^{2/p})^p (1/2 + 2^{1−p}), clamped to 0 when the base is not positive"""
    base = 1.0 - 2.0 ** (1.0 - 2.0 / p) * gap ** (2.0 / p)
    if base <= 0.0:
        return 0.0
    return base ** p * (0.5 + 2.0 ** (1.0 - p))


def lambda1p_report(g: WeightedGraph, p: float, restarts: int = None, seed: int = 0,
                    gap: Optional[float] = None) -> PLaplacianReport:
    """
    Upper bound on λ_{1,p} from the best Poincaré witness and, when the gap is
    supplied, the spectral lower bound.
    """
    require_connected(g)
    if gap is not None:
        measured = spectral_report(g).restricted_norm
        if abs(measured - gap) > GAP_MATCH_TOL:
            raise BadParameter(f"supplied gap {gap} differs from measured ‖A⁰‖ = {measured}")

    estimate = poincare_estimate(g, p, 1, restarts, seed)
    upper = 1.0 / (2.0 * estimate.lower_estimate ** p)
    lower = theorem37_lower(p, gap) if gap is not None else 0.0

    if upper < lower - 1e-9:
        logger.warning(f"λ_1,{p} upper bound {upper} below spectral lower bound {lower}")
    return PLaplacianReport(p=p, lambda_1p_upper=upper, theorem37_lower=lower,
                            poincare_lower=estimate.lower_estimate)
