"""
Closed-form thresholds for random triangular groups: density condition,
certified p-ranges, the conformal-dimension lower bound and the gap levels
required in each model.
"""

import logging
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict

from src.config import Config
from src.utils.errors import BadParameter

# Configure logging
logger = logging.getLogger(__name__)


class CorollaryRanges(BaseModel):
    """Upper ends of the certified ranges [2, p_max]; a range is empty when p_max < 2"""
    model_config = ConfigDict(frozen=True)

    p_max_lp: float
    p_max_subquotient: float
    alpha: float
    lp_empty: bool
    subquotient_empty: bool
    density_condition: bool


class Theorem71Threshold(BaseModel):
    model_config = ConfigDict(frozen=True)

    certifiable_epsilon: float
    log_rule: float
    B: float


def _check_density(m: float, d: float, eta: float) -> None:
    if not 0 < d < 1:
        raise BadParameter(f"density must lie in (0, 1), got {d}")
    if eta <= 0:
        raise BadParameter(f"eta must be positive, got {eta}")
    if m < 2:
        raise BadParameter(f"m must be >= 2, got {m}")


def density_condition(m: float, d: float, eta: float) -> bool:
    """d ≥ 1/3 + (log log m − log(2 − η)) / (3 log m)"""
    _check_density(m, d, eta)
    if eta >= 2:
        return True
    log_m = math.log(m)
    return d >= 1.0 / 3.0 + (math.log(log_m) - math.log(2.0 - eta)) / (3.0 * log_m)


def _range_end(m: float, d: float, denominator: float) -> float:
    return math.sqrt(max(0.0, (3.0 * d - 1.0) * math.log(m)) / denominator)


def corollary14_ranges(m: float, d: float, eta: float, alpha: Optional[float] = None) -> CorollaryRanges:
    """
    p_max for L^p targets, √((3d−1) log m / (η + log 2)), and for targets
    α-isomorphic to subquotients of 2/p-Hilbertian spaces,
    √((3d−1) log m / (η + log 2α)) − 1/2.
    """
    _check_density(m, d, eta)
    alpha = 1.0 if alpha is None else float(alpha)
    if alpha < 1:
        raise BadParameter(f"alpha must be >= 1, got {alpha}")

    holds = density_condition(m, d, eta)
    if not holds:
        logger.warning(f"density condition fails for m={m}, d={d}, eta={eta}; ranges are formal")

    p_lp = _range_end(m, d, eta + math.log(2.0))
    p_sub = _range_end(m, d, eta + math.log(2.0 * alpha)) - 0.5
    return CorollaryRanges(
        p_max_lp=p_lp,
        p_max_subquotient=p_sub,
        alpha=alpha,
        lp_empty=p_lp < 2,
        subquotient_empty=p_sub < 2,
        density_condition=holds,
    )


def confdim_lower_bound(m: float, d: float, eta: float) -> float:
    """√((3d−1) log m / (η + log 2)), a lower bound on the boundary's conformal dimension"""
    _check_density(m, d, eta)
    return _range_end(m, d, eta + math.log(2.0))


def theorem71_threshold(m: float, rho: float, B: float = None) -> Theorem71Threshold:
    """ε(X) ≥ √(B/(ρm²)) certifies Γ(m, ρ); at ρ = log m/(8m²) this is √(8B/log m)"""
    B = Config.CONSTANT_B if B is None else B
    if B <= 0:
        raise BadParameter(f"B must be positive, got {B}")
    if not 0 < rho <= 1:
        raise BadParameter(f"rho must lie in (0, 1], got {rho}")
    if m < 2:
        raise BadParameter(f"m must be >= 2, got {m}")
    return Theorem71Threshold(
        certifiable_epsilon=math.sqrt(B / (rho * m * m)),
        log_rule=math.sqrt(8.0 * B / math.log(m)),
        B=B,
    )


def density_threshold(m: float, d: float, C: float = None) -> float:
    """√(C m / (2m−1)^{3d}): the link gap the density model reaches"""
    C = Config.CONSTANT_B if C is None else C
    if C <= 0:
        raise BadParameter(f"C must be positive, got {C}")
    if not 0 < d < 1:
        raise BadParameter(f"density must lie in (0, 1), got {d}")
    return math.sqrt(C * m / (2.0 * m - 1.0) ** (3.0 * d))


def uniform_threshold(m: float, n_relators: float, B_prime: float = None) -> float:
    """√(B′ m / N) for the uniform model with N relators"""
    B_prime = Config.CONSTANT_B_PRIME if B_prime is None else B_prime
    if B_prime <= 0:
        raise BadParameter(f"B' must be positive, got {B_prime}")
    if n_relators <= 0:
        raise BadParameter(f"relator count must be positive, got {n_relators}")
    return math.sqrt(B_prime * m / n_relators)


def binomial_regime(m: float, eta: float) -> float:
    """(1+η) log m / (8m²): the smallest ρ covered by the link gap bound"""
    if m < 2:
        raise BadParameter(f"m must be >= 2, got {m}")
    if eta <= 0:
        raise BadParameter(f"eta must be positive, got {eta}")
    return (1.0 + eta) * math.log(m) / (8.0 * m * m)
