"""
Trial kind "certify": sample a presentation and certify it.

Options: "families" (text as accepted by parse_families), "K", "B", "eta".
"""

import logging
from typing import Any, Dict

from src.certify.certificate_graph_agent import certificate_graph_agent
from src.certify.thresholds import parse_families
from src.orchestrator.experiment_orchestrator import register_trial_kind
from src.random_groups.experiments import resolve_param
from src.random_groups.models import sample_presentation
from src.utils.errors import BadParameter, InvalidDescriptor, NTooLarge

# Configure logging
logger = logging.getLogger(__name__)

CERTIFY_COLUMNS = ["m", "model", "param", "trial", "seed", "n_relators", "gap", "connected",
                   "certified_p2", "max_p_lp", "max_p_subquotient", "capped", "required_epsilon",
                   "finiteness_regime", "confdim_lower"]


@register_trial_kind("certify", CERTIFY_COLUMNS, required=["m", "model", "param"])
def certify_kind(point: Dict[str, Any], seed: int, options: Dict[str, Any]) -> Dict[str, Any]:
    m = int(point["m"])
    model = str(point["model"])
    param = resolve_param(model, point["param"], m)
    try:
        families = parse_families(options.get("families", "lp"))
        pres = sample_presentation(model, m, param, seed)
    except (BadParameter, NTooLarge) as e:
        raise InvalidDescriptor(str(e))

    certificate = certificate_graph_agent.certify(
        pres, families, K=options.get("K"), B=options.get("B"), eta=options.get("eta"),
    )
    lp = certificate.family("lp")
    return {
        "param": param,
        "n_relators": certificate.n_relators,
        "gap": certificate.gap,
        "connected": certificate.connected,
        "certified_p2": lp.certified if lp else certificate.gap < 0.25,
        "max_p_lp": certificate.max_p_lp,
        "max_p_subquotient": certificate.max_p_subquotient,
        "capped": lp.capped if lp else False,
        "required_epsilon": certificate.required_epsilon,
        "finiteness_regime": certificate.finiteness_regime,
        "confdim_lower": certificate.confdim_lower,
    }
