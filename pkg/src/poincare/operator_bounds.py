"""
Operator-level bounds: the Markov operator on L^p_0, the uniform convexity
constant of θ-Hilbertian targets, the Poincaré bound from convexity plus gap,
and the measured ratio between Poincaré constants at two exponents.
"""

import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel

from src.config import Config
from src.graph_core.spectral import markov_eigenpairs, spectral_report
from src.graph_core.weighted_graph import WeightedGraph, as_vertex_function, markov_apply
from src.poincare.estimator import poincare_estimate, require_connected
from src.poincare.lp_tools import lp_norm, signed_power
from src.poincare.ratio import ratio_terms
from src.utils.errors import BadParameter, GapTooLarge
from src.utils.seeding import child_rng

# Configure logging
logger = logging.getLogger(__name__)

POWER_STEPS = 50


class MarkovNormBounds(BaseModel):
    gap: float
    upper: float
    lower: float


class Theorem32Constant(BaseModel):
    poincare_upper: float
    delta: float


class RatioScan(BaseModel):
    pi_p: float
    pi_q: float
    max_observed_ratio: float


class MeanZeroCheck(BaseModel):
    lhs: float
    rhs: float
    holds: bool


def uniform_convexity_constant(theta: float) -> float:
    """4^{1−1/θ}: p-uniform convexity constant of a strictly θ-Hilbertian space, p = 2/θ"""
    if not 0 < theta <= 1:
        raise BadParameter(f"θ must lie in (0, 1], got {theta}")
    return 4.0 ** (1.0 - 1.0 / theta)


def interpolated_norm_bound(p: float, gap: float) -> float:
    """2^{1−2/p} ‖A⁰‖^{2/p}"""
    return 2.0 ** (1.0 - 2.0 / p) * gap ** (2.0 / p)


def _centered(f: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return f - (nu @ f)[None, :]


def _norm_ratio(g: WeightedGraph, f: np.ndarray, nu: np.ndarray, p: float) -> float:
    norm = lp_norm(f, nu, p)
    if norm <= 0.0:
        return 0.0
    return lp_norm(markov_apply(g, f), nu, p) / norm


def markov_lp_norm_bounds(g: WeightedGraph, p: float, k: int = 1, samples: int = None,
                          seed: int = 0) -> MarkovNormBounds:
    """
    Sandwich ‖A‖ on L^p_0(V,ν;ℓ^p_k).

    upper is the interpolation bound; lower is the best ratio ‖Af‖/‖f‖ over
    sampled mean-zero f, each improved by power-method reweighting
    f ← {A{Af}^{p−1}}^{q−1}, re-centred after every step.
    """
    if p < 2:
        raise BadParameter(f"interpolation bound needs p >= 2, got {p}")
    require_connected(g)
    samples = Config.MARKOV_SAMPLES if samples is None else samples

    nu = g.degrees() / g.degrees().sum()
    gap = spectral_report(g).restricted_norm
    upper = interpolated_norm_bound(p, gap)
    q = p / (p - 1.0)

    eigenvalues, eigenfunctions = markov_eigenpairs(g)
    starts = []
    if g.n > 1:
        for index in (1, g.n - 1):
            start = np.zeros((g.n, k))
            start[:, 0] = eigenfunctions[:, index]
            starts.append(start)
    for sample in range(samples):
        starts.append(child_rng(seed, sample).standard_normal((g.n, k)))

    lower = 0.0
    for start in starts:
        f = _centered(start, nu)
        for _ in range(POWER_STEPS):
            ratio = _norm_ratio(g, f, nu, p)
            lower = max(lower, ratio)
            dual = markov_apply(g, signed_power(markov_apply(g, f), p - 1.0))
            f = _centered(signed_power(dual, q - 1.0), nu)
            norm = lp_norm(f, nu, p)
            if norm <= 0.0:
                break
            f = f / norm
        else:
            lower = max(lower, _norm_ratio(g, f, nu, p))

    if lower > upper + 1e-9:
        logger.warning(f"Sampled ‖A‖ lower bound {lower} exceeds interpolation bound {upper}")
    return MarkovNormBounds(gap=gap, upper=upper, lower=lower)


def theorem32_constant(p: float, gap: float, convexity_C: Optional[float] = None) -> Theorem32Constant:
    """
    π ≤ (1+C)^{−1/p}(1−gap)^{−1}; C defaults to 2^{2−p} (L^p-type targets).

    Raises:
        GapTooLarge: when (1+C)^{1/p}(1−gap) ≤ 1
    """
    if p <= 1:
        raise BadParameter(f"p must exceed 1, got {p}")
    if not 0.0 <= gap <= 1.0:
        raise BadParameter(f"gap must lie in [0, 1], got {gap}")
    convexity_C = 2.0 ** (2.0 - p) if convexity_C is None else convexity_C
    if (1.0 + convexity_C) ** (1.0 / p) * (1.0 - gap) <= 1.0:
        raise GapTooLarge(f"gap {gap} leaves no contraction for p={p}, C={convexity_C}")
    upper = (1.0 + convexity_C) ** (-1.0 / p) / (1.0 - gap)
    return Theorem32Constant(poincare_upper=upper, delta=1.0 - upper)


def mean_zero_poincare_check(g: WeightedGraph, f, p: float) -> MeanZeroCheck:
    """
    ‖f‖_{L^p(ν)} ≤ (1+2^{2−p})^{−1/p}(1 − 2^{1−2/p}ε^{2/p})^{−1}‖∇f‖_{L^p(ℙ)}
    for ν-mean-zero f, with ε = ‖A⁰‖. f is centred first.
    """
    if p < 2:
        raise BadParameter(f"bound needs p >= 2, got {p}")
    values = as_vertex_function(g, f)
    values = values[:, None] if values.ndim == 1 else values
    nu = g.degrees() / g.degrees().sum()
    values = _centered(values, nu)

    base = 1.0 - interpolated_norm_bound(p, spectral_report(g).restricted_norm)
    if base <= 0.0:
        raise GapTooLarge("interpolated norm bound is not below 1")
    constant = (1.0 + 2.0 ** (2.0 - p)) ** (-1.0 / p) / base

    lhs = lp_norm(values, nu, p)
    _, gradient_norm = ratio_terms(g, values, p)
    rhs = constant * gradient_norm
    return MeanZeroCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-9)


def matousek_ratio_scan(g: WeightedGraph, p: float, q: float, samples: int = None, seed: int = 0) -> RatioScan:
    """Measured π̂_p / π̂_q^{max(q/p, 1)}; report only"""
    if p <= 1 or q <= 1:
        raise BadParameter(f"p and q must exceed 1, got p={p}, q={q}")
    pi_p = poincare_estimate(g, p, 1, samples, seed).lower_estimate
    pi_q = pi_p if p == q else poincare_estimate(g, q, 1, samples, seed).lower_estimate
    ratio = pi_p / pi_q ** max(q / p, 1.0)
    logger.debug(f"π̂_{p} = {pi_p}, π̂_{q} = {pi_q}, ratio {ratio}")
    return RatioScan(pi_p=pi_p, pi_q=pi_q, max_observed_ratio=ratio if math.isfinite(ratio) else float("inf"))
