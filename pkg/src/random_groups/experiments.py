"""
Trial kind "link_spectrum": sample a presentation, measure its link.
"""

import logging
import math
from typing import Any, Dict

from src.orchestrator.experiment_orchestrator import register_trial_kind
from src.orchestrator.rho_rules import resolve_rho
from src.random_groups.link import link_spectral_report
from src.random_groups.models import sample_presentation
from src.utils.errors import BadParameter, EmptyLink, InvalidDescriptor, NTooLarge

# Configure logging
logger = logging.getLogger(__name__)

LINK_COLUMNS = ["m", "model", "param", "trial", "seed", "n_relators", "gap", "connected", "isolated",
                "part1_gap", "part2_gap", "part3_gap", "delta", "scaled_gap"]

_NAN = float("nan")


def resolve_param(model: str, param: Any, m: int) -> float:
    """Binomial parameters may be ρ rules; the others are plain numbers"""
    try:
        if model == "binomial":
            return resolve_rho(param, m)
        return float(param)
    except (BadParameter, ValueError) as e:
        raise InvalidDescriptor(str(e))


@register_trial_kind("link_spectrum", LINK_COLUMNS, required=["m", "model", "param"])
def link_spectrum_kind(point: Dict[str, Any], seed: int, options: Dict[str, Any]) -> Dict[str, Any]:
    m = int(point["m"])
    model = str(point["model"])
    param = resolve_param(model, point["param"], m)
    try:
        pres = sample_presentation(model, m, param, seed)
    except (BadParameter, NTooLarge) as e:
        raise InvalidDescriptor(str(e))

    row = {"param": param, "n_relators": pres.n_relators}
    try:
        report = link_spectral_report(pres)
    except EmptyLink:
        logger.debug(f"Empty presentation at m={m}, {model}({param}), seed {seed}")
        return {**row, "gap": _NAN, "connected": False, "isolated": 2 * m,
                "part1_gap": _NAN, "part2_gap": _NAN, "part3_gap": _NAN, "delta": _NAN, "scaled_gap": _NAN}

    # √(ρm²) normalisation is only meaningful for the binomial model
    scale = math.sqrt(param * m * m) if model == "binomial" else _NAN
    return {
        **row,
        "gap": report.gap,
        "connected": report.connected,
        "isolated": report.isolated,
        "part1_gap": report.part_gaps[0],
        "part2_gap": report.part_gaps[1],
        "part3_gap": report.part_gaps[2],
        "delta": report.delta,
        "scaled_gap": report.gap * scale,
    }
