"""
Erdős–Rényi sampling and the degree / spectral statistics checked against
the concentration and gap results for G(m, ρ).
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from src.config import Config
from src.graph_core.spectral import spectral_report
from src.graph_core.weighted_graph import WeightedGraph
from src.utils.errors import BadParameter
from src.utils.seeding import make_rng

# Configure logging
logger = logging.getLogger(__name__)


class ErdosRenyiParams(BaseModel):
    m: int
    rho: float
    seed: int

    @model_validator(mode="after")
    def _check(self):
        if self.m < 1:
            raise BadParameter(f"m must be >= 1, got {self.m}")
        if not 0.0 <= self.rho <= 1.0:
            raise BadParameter(f"rho must lie in [0, 1], got {self.rho}")
        return self


class DegreeStats(BaseModel):
    min_deg: float
    max_deg: float
    mean_deg: float
    l1_dev_expected: float
    l1_dev_mean: float


class ErGapTrial(BaseModel):
    connected: bool
    gap: float
    scaled_gap: float
    stats: Optional[DegreeStats] = None


def connectivity_threshold(m: int, eta: float) -> Tuple[float, float]:
    """((1−η) log m/m, (1+η) log m/m)"""
    if m < 2:
        raise BadParameter(f"connectivity threshold needs m >= 2, got {m}")
    base = math.log(m) / m
    return (1.0 - eta) * base, (1.0 + eta) * base


def sample_er(params: ErdosRenyiParams) -> WeightedGraph:
    """
    One draw of G(m, ρ).

    Each unordered pair {s, t}, s < t, consumes one uniform draw in row-major
    order and is kept when the draw is below ρ.
    """
    rng = make_rng(params.seed)
    rows, cols = np.triu_indices(params.m, k=1)
    keep = rng.random(rows.size) < params.rho
    return WeightedGraph.from_arrays(params.m, rows[keep], cols[keep], np.ones(int(keep.sum())))


def degree_stats(g: WeightedGraph, rho: float) -> DegreeStats:
    if rho <= 0:
        raise BadParameter(f"rho must be positive, got {rho}")
    m = g.n
    degrees = g.degrees()
    expected = (m - 1) * rho
    mean = float(degrees.mean())
    if expected <= 0 or mean <= 0:
        raise BadParameter("degree deviations are undefined: expected or mean degree is zero")
    return DegreeStats(
        min_deg=float(degrees.min()),
        max_deg=float(degrees.max()),
        mean_deg=mean,
        l1_dev_expected=float(np.sum(np.abs(degrees - expected)) / (m * expected)),
        l1_dev_mean=float(np.sum(np.abs(degrees - mean)) / (m * mean)),
    )


def degrees_in_band(stats: DegreeStats, m: int, rho: float, low: float = None, high: float = None) -> bool:
    """All degrees within [low·mρ, high·mρ]"""
    low = Config.DEGREE_BAND_LOW if low is None else low
    high = Config.DEGREE_BAND_HIGH if high is None else high
    return low * m * rho <= stats.min_deg and stats.max_deg <= high * m * rho


def er_gap_trial(params: ErdosRenyiParams, eta: float = None) -> ErGapTrial:
    """Sample, measure ‖A⁰‖ and scale it by √(mρ); disconnected samples report gap 1"""
    eta = Config.CONNECTIVITY_ETA if eta is None else eta
    if params.m >= 2 and params.rho < connectivity_threshold(params.m, eta)[1]:
        logger.warning(f"rho={params.rho} is below the connectivity threshold for m={params.m}")

    g = sample_er(params)
    try:
        stats = degree_stats(g, params.rho)
    except BadParameter:
        stats = None

    if g.total_weight() <= 0:
        connected, gap = False, 1.0
    else:
        report = spectral_report(g)
        connected, gap = report.connected, report.restricted_norm
    return ErGapTrial(connected=connected, gap=gap, scaled_gap=gap * math.sqrt(params.m * params.rho), stats=stats)
