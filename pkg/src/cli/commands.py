"""
Subcommand handlers.

Each handler takes the resolved argparse namespace and returns a
CommandResult; the entry point owns output and exit codes.
"""

import argparse
import logging
import math
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from src.certify.certificate_graph_agent import Certificate, certificate_graph_agent
from src.certify.thresholds import parse_families
from src.config import Config
from src.fixed_point.action import load_action, trivial_action
from src.fixed_point.complex import (
    SimplicialComplex2,
    load_complex,
    octahedron,
    single_triangle,
    triangulated_cycle_cone,
)
from src.fixed_point.iteration import iterate_fixed_point
from src.graph_core.families import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    random_weighted_graph,
    star_graph,
)
from src.graph_core.graph_io import load_graph
from src.graph_core.spectral import spectral_report
from src.graph_core.union_bounds import perturbation_bound_check, union_gap_bound
from src.graph_core.weighted_graph import WeightedGraph
from src.orchestrator.experiment_orchestrator import ExperimentDescriptor
from src.poincare.estimator import bipartite_poincare_estimate, poincare_estimate
from src.poincare.p_laplacian import lambda1p_report
from src.poincare.ratio import find_bipartition
from src.random_graphs.montecarlo import median_by, montecarlo
from src.random_groups.experiments import resolve_param
from src.random_groups.models import sample_presentation
from src.random_groups.presentation_io import load_presentation, save_presentation
from src.random_groups.words import rank_relators
from src.utils.errors import UsageError
from src.utils.seeding import child_rng, derive_seed, make_rng, resolve_master_seed

# Configure logging
logger = logging.getLogger(__name__)

GRAPH_FAMILIES = {
    "complete": complete_graph,
    "bipartite": complete_bipartite_graph,
    "cycle": cycle_graph,
    "path": path_graph,
    "star": star_graph,
}


class CommandResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    frame: pd.DataFrame
    grid: Dict[str, List[Any]] = Field(default_factory=dict)
    options: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    summary: str


def _require(ns: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(ns, name, None) in (None, [])]
    if missing:
        raise UsageError(f"{ns.command} needs {', '.join(missing)}")


def _seed_or_zero(ns: argparse.Namespace) -> int:
    """Deterministic commands fall back to seed 0 instead of failing"""
    if ns.seed is not None:
        return int(ns.seed)
    return int(Config.ZSL_SEED) if Config.ZSL_SEED is not None else 0


def _format_medians(medians: Dict[Any, float]) -> str:
    if not medians:
        return "n/a"
    return ", ".join(f"m={key}: {value:.4f}" for key, value in medians.items())


def _descriptor(ns: argparse.Namespace, kind: str, grid: Dict[str, List[Any]],
                options: Dict[str, Any]) -> ExperimentDescriptor:
    return ExperimentDescriptor(kind=kind, grid=grid, trials=ns.trials,
                                master_seed=resolve_master_seed(ns.seed), options=options)


def er_stats(ns: argparse.Namespace) -> CommandResult:
    rhos = ns.rho_rule or ns.rho
    if not ns.m or not rhos:
        raise UsageError("er-stats needs --m and one of --rho / --rho-rule")
    options = {} if ns.eta is None else {"eta": ns.eta}
    descriptor = _descriptor(ns, ns.kind, {"m": ns.m, "rho": rhos}, options)
    frame = montecarlo(descriptor, ns.workers)

    connected = frame["connected"].dropna()
    share = f"{connected.astype(bool).mean():.0%} connected" if len(connected) else "connectivity not measured"
    summary = (f"er-stats: {len(frame)} trial(s), {share}, "
               f"median scaled gap {_format_medians(median_by(frame, 'scaled_gap'))}")
    return CommandResult(frame=frame, grid=descriptor.grid, options=options,
                         seed=descriptor.master_seed, summary=summary)


def group_sample(ns: argparse.Namespace) -> CommandResult:
    _require(ns, "model", "m", "param")
    m = ns.m[0]
    seed = resolve_master_seed(ns.seed)
    pres = sample_presentation(ns.model, m, resolve_param(ns.model, ns.param[0], m), seed)
    if ns.save:
        save_presentation(pres, ns.save)

    ranks = rank_relators(m, pres.relators) if pres.n_relators else np.zeros(0, dtype=np.int64)
    frame = pd.DataFrame({
        "index": np.arange(pres.n_relators),
        "relator": [str(word) for word in pres.words()],
        "rank": ranks,
    })
    summary = f"group-sample: m={m} {pres.tag}, {pres.n_relators} relator(s)"
    return CommandResult(frame=frame, grid={"m": [m], "model": [ns.model], "param": [pres.param]},
                         seed=seed, summary=summary)


def link_spectrum(ns: argparse.Namespace) -> CommandResult:
    _require(ns, "model", "m", "param")
    descriptor = _descriptor(ns, "link_spectrum", {"m": ns.m, "model": [ns.model], "param": ns.param}, {})
    frame = montecarlo(descriptor, ns.workers)
    column = "scaled_gap" if ns.model == "binomial" else "gap"
    summary = (f"link-spectrum: {len(frame)} trial(s), "
               f"{frame['connected'].astype(bool).mean():.0%} connected, "
               f"median {column.replace('_', ' ')} {_format_medians(median_by(frame, column))}")
    return CommandResult(frame=frame, grid=descriptor.grid, seed=descriptor.master_seed, summary=summary)


def _certificate_frame(certificate: Certificate) -> pd.DataFrame:
    head = {key: getattr(certificate, key) for key in ("m", "model", "param", "seed", "n_relators", "gap",
                                                       "connected", "confdim_lower", "finiteness_regime",
                                                       "required_epsilon")}
    rows = []
    for result in certificate.families:
        params = ";".join(f"{key}={value:g}" for key, value in sorted(result.params.items()))
        rows.append({**head, "family": result.name, "params": params, "epsilon": result.epsilon,
                     "certified": result.certified, "max_p": result.max_p, "capped": result.capped})
    return pd.DataFrame(rows)


def certify(ns: argparse.Namespace) -> CommandResult:
    families_text = ns.families or "lp"
    families = parse_families(families_text)
    options = {"families": families_text, "K": ns.K, "B": ns.B, "eta": ns.eta}
    options = {key: value for key, value in options.items() if value is not None}

    if ns.presentation:
        pres = load_presentation(ns.presentation)
        certificate = certificate_graph_agent.certify(pres, families, K=ns.K, B=ns.B, eta=ns.eta)
        verdicts = ", ".join(f"{r.name}={'yes' if r.certified else 'no'}" for r in certificate.families)
        summary = f"certify: gap {certificate.gap:.4f} on {pres.n_relators} relator(s); {verdicts}"
        return CommandResult(frame=_certificate_frame(certificate),
                             options={**options, "presentation": ns.presentation,
                                      "constants": certificate.constants},
                             seed=pres.seed, summary=summary)

    _require(ns, "model", "m", "param")
    descriptor = _descriptor(ns, "certify", {"m": ns.m, "model": [ns.model], "param": ns.param}, options)
    frame = montecarlo(descriptor, ns.workers)
    certified = int(frame["certified_p2"].astype(bool).sum())
    summary = f"certify: certification rate {certified}/{len(frame)} at p=2 ({certified / len(frame):.0%})"
    return CommandResult(frame=frame, grid=descriptor.grid, options=options,
                         seed=descriptor.master_seed, summary=summary)


def resolve_graph(ns: argparse.Namespace) -> WeightedGraph:
    """--graph file or --family name:size"""
    if ns.graph:
        return load_graph(ns.graph)
    if not ns.family:
        raise UsageError(f"{ns.command} needs --graph or --family")
    name, _, size = ns.family.partition(":")
    if name not in GRAPH_FAMILIES or not size.isdigit():
        raise UsageError(f"bad --family {ns.family!r}; expected one of "
                         f"{', '.join(f'{key}:<n>' for key in GRAPH_FAMILIES)}")
    return GRAPH_FAMILIES[name](int(size))


def poincare(ns: argparse.Namespace) -> CommandResult:
    g = resolve_graph(ns)
    seed = _seed_or_zero(ns)
    partition = find_bipartition(g) if ns.bipartite else None

    rows = []
    for p in ns.p:
        if partition is not None:
            estimate = bipartite_poincare_estimate(g, partition, p, ns.k, ns.restarts, seed)
        else:
            estimate = poincare_estimate(g, p, ns.k, ns.restarts, seed)
        rows.append(estimate.model_dump(exclude={"witness"}))
    frame = pd.DataFrame(rows)
    best = ", ".join(f"p={row['p']:g}: {row['lower_estimate']:.6f}" for row in rows)
    return CommandResult(frame=frame, grid={"p": list(ns.p)},
                         options={"graph": ns.graph or ns.family, "k": ns.k, "bipartite": bool(ns.bipartite)},
                         seed=seed, summary=f"poincare: {g.n} vertices, {best}")


def plaplacian(ns: argparse.Namespace) -> CommandResult:
    g = resolve_graph(ns)
    seed = _seed_or_zero(ns)
    gap = spectral_report(g).restricted_norm
    rows = [{**lambda1p_report(g, p, ns.restarts, seed, gap=gap).model_dump(), "gap": gap} for p in ns.p]
    frame = pd.DataFrame(rows)
    return CommandResult(frame=frame, grid={"p": list(ns.p)}, options={"graph": ns.graph or ns.family},
                         seed=seed, summary=f"plaplacian: {g.n} vertices, gap {gap:.6f}, {len(rows)} exponent(s)")


def resolve_complex(ns: argparse.Namespace) -> SimplicialComplex2:
    if ns.complex_file:
        return load_complex(ns.complex_file)
    name = ns.complex or "single_triangle"
    if name == "single_triangle":
        return single_triangle()
    if name == "octahedron":
        return octahedron()
    if name.startswith("cone:") and name[5:].isdigit():
        return triangulated_cycle_cone(int(name[5:]))
    raise UsageError(f"bad --complex {name!r}; expected single_triangle, octahedron or cone:<n>")


def fixedpoint_demo(ns: argparse.Namespace) -> CommandResult:
    complex_ = resolve_complex(ns)
    action = load_action(ns.action_file, complex_) if ns.action_file else trivial_action(complex_)
    seed = _seed_or_zero(ns)

    # random start, made equivariant by copying each orbit's representative value
    start = make_rng(seed).normal(size=(complex_.n, ns.k))
    phi0 = start[action.orbit_labels()]

    rows = []
    finals = []
    for p in ns.p:
        run = iterate_fixed_point(action, phi0, p, ns.k, tol=ns.tol, max_iter=ns.max_iter, workers=ns.workers)
        rows.append({"p": p, "step": 0, "energy": run.energy_trace[0], "ratio": math.nan, "distance": math.nan})
        for step, (value, ratio, distance) in enumerate(
                zip(run.energy_trace[1:], run.contraction_ratios, run.distances), start=1):
            rows.append({"p": p, "step": step, "energy": value, "ratio": ratio, "distance": distance})
        finals.append(f"p={p:g}: E={run.energy_trace[-1]:.2e} after {run.iterations} step(s)")

    frame = pd.DataFrame(rows, columns=["p", "step", "energy", "ratio", "distance"])
    options = {"complex": ns.complex_file or ns.complex or "single_triangle", "action": ns.action_file,
               "k": ns.k, "tol": ns.tol, "max_iter": ns.max_iter}
    return CommandResult(frame=frame, grid={"p": list(ns.p)}, options=options, seed=seed,
                         summary=f"fixedpoint-demo: |Γ|={action.order}, " + "; ".join(finals))


def _union_row(g1: WeightedGraph, g2: WeightedGraph) -> Dict[str, Any]:
    check = perturbation_bound_check(g1, g2)
    bound = union_gap_bound(g1, g2)
    return {
        "delta_prime": check.delta_prime,
        "lhs": check.lhs,
        "holds": check.holds,
        "sharp_lhs": check.sharp_lhs,
        "sharp_holds": check.sharp_holds,
        "delta": bound.delta,
        "bound": bound.bound,
        "norm_sum": bound.norm_sum,
        "union_holds": bound.holds,
        "lower_holds": bound.lower_holds,
    }


def union_check(ns: argparse.Namespace) -> CommandResult:
    if ns.graph1 or ns.graph2:
        _require(ns, "graph1", "graph2")
        frame = pd.DataFrame([_union_row(load_graph(ns.graph1), load_graph(ns.graph2))])
        seed = None
        options = {"graph1": ns.graph1, "graph2": ns.graph2}
    else:
        seed = resolve_master_seed(ns.seed)
        rows = []
        for trial in range(ns.trials):
            rng = child_rng(seed, 0, trial)
            g1 = random_weighted_graph(ns.n, rng, ns.density)
            g2 = random_weighted_graph(ns.n, rng, ns.density).scaled(ns.scale)
            rows.append({"trial": trial, "seed": derive_seed(seed, 0, trial), **_union_row(g1, g2)})
        frame = pd.DataFrame(rows)
        options = {"n": ns.n, "density": ns.density, "scale": ns.scale}

    flags = ["holds", "sharp_holds", "union_holds", "lower_holds"]
    violations = int((~frame[flags].astype(bool)).to_numpy().sum())
    return CommandResult(frame=frame, options=options, seed=seed,
                         summary=f"union-check: {len(frame)} pair(s), {violations} violated inequalit(ies)")


HANDLERS = {
    "er-stats": er_stats,
    "group-sample": group_sample,
    "link-spectrum": link_spectrum,
    "certify": certify,
    "poincare": poincare,
    "plaplacian": plaplacian,
    "fixedpoint-demo": fixedpoint_demo,
    "union-check": union_check,
}
