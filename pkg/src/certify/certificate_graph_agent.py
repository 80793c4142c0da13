"""
Certificate Graph Agent - LangGraph Implementation

Runs the certification pipeline for one presentation as a linear graph:
build_link → measure_gap → evaluate_thresholds → assemble.
"""

import logging
import math
from typing import Any, Dict, List, Optional

from langgraph.graph import StateGraph
from pydantic import BaseModel, ConfigDict, Field

from src.certify.formulas import confdim_lower_bound, theorem71_threshold
from src.certify.thresholds import FamilySpec, family_log_epsilon, max_p_certified
from src.config import Config
from src.graph_core.spectral import spectral_report
from src.random_groups.link import LinkGraph, build_link, finiteness_regime_flag
from src.random_groups.models import Presentation

# Configure logging
logger = logging.getLogger(__name__)


class FamilyResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    params: Dict[str, float]
    epsilon: float
    certified: bool
    max_p: Optional[float]
    capped: bool = False


class Certificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    model: str
    param: Optional[float]
    seed: Optional[int]
    n_relators: int
    gap: float
    connected: bool
    families: List[FamilyResult]
    max_p_lp: Optional[float] = None
    max_p_subquotient: Optional[float] = None
    confdim_lower: Optional[float] = None
    finiteness_regime: Optional[bool] = None
    required_epsilon: Optional[float] = None
    constants: Dict[str, float]

    def family(self, name: str) -> Optional[FamilyResult]:
        return next((f for f in self.families if f.name == name), None)

    @property
    def certified_any(self) -> bool:
        return any(f.certified for f in self.families)


class GraphState(BaseModel):
    """State for the certification graph"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    presentation: Presentation
    families: List[FamilySpec]
    K: float
    B: float
    eta: float
    link: Optional[LinkGraph] = None
    gap: Optional[float] = None
    connected: Optional[bool] = None
    family_results: Optional[List[FamilyResult]] = None
    certificate: Optional[Certificate] = None
    notes: List[str] = Field(default_factory=list)


def evaluate_family(spec: FamilySpec, gap: float, K: float = None) -> FamilyResult:
    """Threshold at p = 2 (or the custom ε), strict comparison, and the supremum of certified p"""
    log_eps = family_log_epsilon(spec, K)
    if log_eps is None:
        epsilon = float(spec.params["epsilon"])
        return FamilyResult(name=spec.name, params=dict(spec.params), epsilon=epsilon,
                            certified=gap < epsilon, max_p=None)
    epsilon = math.exp(log_eps(2.0))
    # certified iff a p-range exists
    p_range = max_p_certified(gap, spec, K)
    return FamilyResult(name=spec.name, params=dict(spec.params), epsilon=epsilon,
                        certified=p_range.max_p is not None, max_p=p_range.max_p, capped=p_range.capped)


class CertificateGraphAgent:
    """Agent that uses LangGraph to turn a presentation into a certificate"""

    def __init__(self):
        logger.info("Initializing Certificate Graph Agent")
        self.graph = self._create_graph()
        self.compiled_graph = self.graph.compile()

    def _create_graph(self) -> StateGraph:
        graph = StateGraph(GraphState)

        graph.add_node("build_link", self._build_link)
        graph.add_node("measure_gap", self._measure_gap)
        graph.add_node("evaluate_thresholds", self._evaluate_thresholds)
        graph.add_node("assemble", self._assemble)

        graph.set_entry_point("build_link")
        graph.add_edge("build_link", "measure_gap")
        graph.add_edge("measure_gap", "evaluate_thresholds")
        graph.add_edge("evaluate_thresholds", "assemble")
        graph.set_finish_point("assemble")

        return graph

    def _build_link(self, state: GraphState) -> Dict[str, Any]:
        if state.presentation.n_relators == 0:
            return {"link": None, "notes": state.notes + ["empty presentation"]}
        return {"link": build_link(state.presentation)}

    def _measure_gap(self, state: GraphState) -> Dict[str, Any]:
        """Disconnected links, isolated letters included, count as gap 1"""
        if state.link is None:
            return {"gap": 1.0, "connected": False}
        report = spectral_report(state.link.base)
        if not report.connected:
            return {"gap": 1.0, "connected": False,
                    "notes": state.notes + [f"link disconnected ({report.isolated_removed} isolated)"]}
        return {"gap": report.restricted_norm, "connected": True}

    def _evaluate_thresholds(self, state: GraphState) -> Dict[str, Any]:
        results = [evaluate_family(spec, state.gap, state.K) for spec in state.families]
        return {"family_results": results}

    def _assemble(self, state: GraphState) -> Dict[str, Any]:
        pres = state.presentation
        by_name = {r.name: r for r in state.family_results}

        extra: Dict[str, Any] = {}
        if pres.model == "density" and pres.m >= 2:
            extra["confdim_lower"] = confdim_lower_bound(pres.m, pres.param, state.eta)
        if pres.model == "binomial" and pres.m >= 2 and pres.param:
            extra["finiteness_regime"] = finiteness_regime_flag(pres.m, pres.param)
            extra["required_epsilon"] = theorem71_threshold(pres.m, pres.param, state.B).certifiable_epsilon

        lp = by_name.get("lp") or evaluate_family(FamilySpec(name="lp"), state.gap, state.K)
        subquotient = by_name.get("subquotient")
        certificate = Certificate(
            m=pres.m,
            model=pres.model,
            param=pres.param,
            seed=pres.seed,
            n_relators=pres.n_relators,
            gap=state.gap,
            connected=state.connected,
            families=state.family_results,
            max_p_lp=lp.max_p,
            max_p_subquotient=subquotient.max_p if subquotient else None,
            constants={"K": state.K, "B": state.B},
            **extra,
        )
        return {"certificate": certificate}

    def certify(self, pres: Presentation, families: List[FamilySpec] = None,
                K: float = None, B: float = None, eta: float = None) -> Certificate:
        """
        Certify a presentation against the given space families.

        Args:
            pres: The presentation whose link is measured
            families: Space families; defaults to L^p only
            K, B: Constants echoed into the certificate
            eta: Slack for the conformal-dimension bound

        Returns:
            The assembled Certificate
        """
        initial_state = GraphState(
            presentation=pres,
            families=families or [FamilySpec(name="lp")],
            K=Config.CONSTANT_K if K is None else K,
            B=Config.CONSTANT_B if B is None else B,
            eta=Config.CONFDIM_ETA if eta is None else eta,
        )
        result = self.compiled_graph.invoke(initial_state)
        certificate = result["certificate"]
        logger.debug(f"Certified m={pres.m} {pres.tag}: gap={certificate.gap:.4f}, "
                     f"max_p_lp={certificate.max_p_lp}")
        return certificate


# Create a global instance for easy access
certificate_graph_agent = CertificateGraphAgent()


def certify_presentation(pres: Presentation, families: List[FamilySpec] = None, **constants) -> Certificate:
    return certificate_graph_agent.certify(pres, families, **constants)
