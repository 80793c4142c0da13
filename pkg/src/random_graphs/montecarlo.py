"""
Monte Carlo trial kinds over G(m, ρ) and the montecarlo entry point.
"""

import logging
import math
from typing import Any, Dict

import pandas as pd

from src.orchestrator.experiment_orchestrator import (
    ExperimentDescriptor,
    ExperimentOrchestrator,
    register_trial_kind,
)
from src.random_graphs.erdos_renyi import ErdosRenyiParams, degree_stats, er_gap_trial, sample_er
from src.utils.errors import BadParameter, InvalidDescriptor

# Configure logging
logger = logging.getLogger(__name__)

ER_COLUMNS = ["kind", "m", "rho", "trial", "seed", "connected", "gap", "scaled_gap",
              "min_deg", "max_deg", "l1_dev_expected", "l1_dev_mean"]

_NAN = float("nan")


def _params(point: Dict[str, Any], seed: int) -> ErdosRenyiParams:
    try:
        return ErdosRenyiParams(m=int(point["m"]), rho=float(point["rho"]), seed=seed)
    except BadParameter as e:
        raise InvalidDescriptor(str(e))


def _stats_columns(stats) -> Dict[str, float]:
    if stats is None:
        return {"min_deg": _NAN, "max_deg": _NAN, "l1_dev_expected": _NAN, "l1_dev_mean": _NAN}
    return {
        "min_deg": stats.min_deg,
        "max_deg": stats.max_deg,
        "l1_dev_expected": stats.l1_dev_expected,
        "l1_dev_mean": stats.l1_dev_mean,
    }


@register_trial_kind("er_gap", ER_COLUMNS, required=["m", "rho"])
def er_gap_kind(point: Dict[str, Any], seed: int, options: Dict[str, Any]) -> Dict[str, Any]:
    trial = er_gap_trial(_params(point, seed), options.get("eta"))
    return {"connected": trial.connected, "gap": trial.gap, "scaled_gap": trial.scaled_gap,
            **_stats_columns(trial.stats)}


@register_trial_kind("er_degree", ER_COLUMNS, required=["m", "rho"])
def er_degree_kind(point: Dict[str, Any], seed: int, options: Dict[str, Any]) -> Dict[str, Any]:
    params = _params(point, seed)
    g = sample_er(params)
    try:
        stats = degree_stats(g, params.rho)
    except BadParameter:
        stats = None
    return {"connected": None, "gap": _NAN, "scaled_gap": _NAN, **_stats_columns(stats)}


def montecarlo(descriptor: ExperimentDescriptor, workers: int = None) -> pd.DataFrame:
    """
    Run a descriptor and return its rows.

    Example descriptor: kind "er_gap", grid {"m": [500, 1000], "rho": ["2*logm/m"]},
    10 trials → 20 rows.
    """
    frame = ExperimentOrchestrator(workers).run(descriptor)
    logger.info(f"Monte Carlo {descriptor.kind}: {len(frame)} rows")
    return frame


def median_by(frame: pd.DataFrame, column: str, by: str = "m") -> Dict[Any, float]:
    """Median of column per value of by, skipping NaN"""
    medians = frame.groupby(by)[column].median()
    return {key: float(value) for key, value in medians.items() if not math.isnan(value)}
