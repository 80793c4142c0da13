"""
Certification thresholds ε(X) for the target-space families and the
largest certified exponent p for a measured gap.

The search runs on log ε: ε_lp(64) is about 2^{-2240} and underflows as a
float.
"""

import logging
import math
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from src.config import Config
from src.utils.errors import BadParameter

# Configure logging
logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
# log-space margin below which gap and ε(2) count as equal
TIE_TOL = 1e-12


class FamilySpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    params: Dict[str, float] = Field(default_factory=dict)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{key}={value:g}" for key, value in sorted(self.params.items()))
        return f"{self.name}({inner})"


class PRange(BaseModel):
    """Supremum of the certified exponents; capped marks an unbounded range"""
    model_config = ConfigDict(frozen=True)

    max_p: Optional[float]
    capped: bool = False


def _require_p(p: float) -> None:
    if not p >= 2:
        raise BadParameter(f"p must be >= 2, got {p}")


def log_epsilon_lp(p: float) -> float:
    _require_p(p)
    return LOG2 - 0.5 * p * math.log(p) - 0.5 * p * p * LOG2


def epsilon_lp(p: float) -> float:
    """2 p^{−p/2} 2^{−p²/2}: L^p spaces and subquotients of strictly 2/p-Hilbertian spaces"""
    _require_p(p)
    return 2.0 * p ** (-0.5 * p) * 2.0 ** (-0.5 * p * p)


def _isomorphic_constant(p: float, d_bm: float, K: float = None) -> float:
    K = Config.CONSTANT_K if K is None else K
    _require_p(p)
    if d_bm < 1:
        raise BadParameter(f"Banach-Mazur distance must be >= 1, got {d_bm}")
    if K <= 0:
        raise BadParameter(f"K must be positive, got {K}")
    return K


def log_epsilon_isomorphic(p: float, d_bm: float, K: float = None) -> float:
    K = _isomorphic_constant(p, d_bm, K)
    return math.log(K) - 0.5 * p * math.log(p) - 0.5 * p * p * LOG2 - 0.5 * p * (p + 1) * math.log(d_bm)


def epsilon_isomorphic(p: float, d_bm: float, K: float = None) -> float:
    """K p^{−p/2} 2^{−p²/2} d^{−p(p+1)/2}"""
    K = _isomorphic_constant(p, d_bm, K)
    return K * p ** (-0.5 * p) * 2.0 ** (-0.5 * p * p) * d_bm ** (-0.5 * p * (p + 1))


def _log_sharp(p: float, convexity: float, factor: float) -> float:
    # largest ε with (1 + C)^{1/p} (1 − factor·2^{1−2/p} ε^{2/p}) > 1
    room = -math.expm1(-math.log1p(convexity) / p)
    return 0.5 * p * (math.log(room) - math.log(factor) - (1.0 - 2.0 / p) * LOG2)


def log_epsilon_lp_sharp(p: float) -> float:
    _require_p(p)
    return _log_sharp(p, 2.0 ** (2.0 - p), 1.0)


def epsilon_lp_sharp(p: float) -> float:
    """((1 − (1+2^{2−p})^{−1/p}) / 2^{1−2/p})^{p/2}"""
    return math.exp(log_epsilon_lp_sharp(p))


def log_epsilon_isomorphic_explicit(p: float, d_bm: float) -> float:
    _require_p(p)
    if d_bm < 1:
        raise BadParameter(f"Banach-Mazur distance must be >= 1, got {d_bm}")
    return _log_sharp(p, 2.0 ** (2.0 - p) / d_bm ** p, d_bm)


def epsilon_isomorphic_explicit(p: float, d_bm: float) -> float:
    """Sharp threshold for a target at Banach-Mazur distance d_bm; no universal constant involved"""
    return math.exp(log_epsilon_isomorphic_explicit(p, d_bm))


def _param(spec: FamilySpec, key: str, default: float = None) -> float:
    if key in spec.params:
        return float(spec.params[key])
    if default is None:
        raise BadParameter(f"family {spec.name!r} needs parameter {key!r}")
    return default


def family_log_epsilon(spec: FamilySpec, K: float = None) -> Optional[Callable[[float], float]]:
    """p ↦ log ε(p) for the family; None for custom, whose ε does not depend on p"""
    if spec.name == "lp":
        return log_epsilon_lp
    if spec.name == "subquotient":
        alpha = _param(spec, "alpha", 1.0)
        if alpha < 1:
            raise BadParameter(f"alpha must be >= 1, got {alpha}")
        return lambda p: log_epsilon_lp(p) - 0.5 * p * (p + 1) * math.log(alpha)
    if spec.name == "isomorphic":
        d_bm = _param(spec, "d")
        return lambda p: log_epsilon_isomorphic(p, d_bm, K)
    if spec.name == "lp_sharp":
        return log_epsilon_lp_sharp
    if spec.name == "isomorphic_sharp":
        d_bm = _param(spec, "d")
        return lambda p: log_epsilon_isomorphic_explicit(p, d_bm)
    if spec.name == "custom":
        epsilon = _param(spec, "epsilon")
        if not 0 < epsilon:
            raise BadParameter(f"custom epsilon must be positive, got {epsilon}")
        return None
    raise BadParameter(f"unknown space family {spec.name!r}")


FAMILIES = ("lp", "subquotient", "isomorphic", "lp_sharp", "isomorphic_sharp", "custom")


def parse_families(text: str) -> List[FamilySpec]:
    """
    "lp,subquotient:alpha=2,isomorphic:d=1.5,custom:epsilon=0.1"

    Parameters follow a colon as key=value pairs separated by ';' or further ':'.
    """
    specs = []
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        name, *rest = chunk.split(":")
        params = {}
        for pair in (p for part in rest for p in part.split(";") if p):
            key, sep, value = pair.partition("=")
            if not sep:
                raise BadParameter(f"family parameter {pair!r} is not key=value")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise BadParameter(f"family parameter {pair!r} is not numeric")
        spec = FamilySpec(name=name.strip(), params=params)
        family_log_epsilon(spec)
        specs.append(spec)
    if not specs:
        raise BadParameter("no space families given")
    return specs


def max_p_certified(gap: float, family: FamilySpec = None, K: float = None,
                    p_cap: float = None, tol: float = None) -> PRange:
    """
    Supremum of the exponents p ≥ 2 with ε_family(p) > gap.

    Absent when ε(2) ≤ gap, so a tie at p = 2 is not certified. A zero gap,
    or one below ε(p_cap), returns p_cap with capped set.
    """
    family = family or FamilySpec(name="lp")
    p_cap = Config.P_CAP if p_cap is None else p_cap
    tol = Config.BISECTION_TOL if tol is None else tol
    if not 0 <= gap <= 1:
        raise BadParameter(f"gap must lie in [0, 1], got {gap}")

    log_eps = family_log_epsilon(family, K)
    if log_eps is None:
        return PRange(max_p=None)
    if gap == 0:
        return PRange(max_p=p_cap, capped=True)

    log_gap = math.log(gap)

    def excess(p: float) -> float:
        return log_eps(p) - log_gap

    start = excess(2.0)
    if start <= TIE_TOL:
        return PRange(max_p=None)
    if excess(p_cap) > 0:
        return PRange(max_p=p_cap, capped=True)
    return PRange(max_p=float(brentq(excess, 2.0, p_cap, xtol=tol)))
