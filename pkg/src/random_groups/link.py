"""
Link graph of a triangular presentation.

Vertices are the letters S ∪ S⁻¹ (by code). A relator xyz adds weight 1 to
{x, y⁻¹} in ω₁, to {y, z⁻¹} in ω₂ and to {z, x⁻¹} in ω₃.
"""

import logging
import math
from typing import Tuple

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from src.graph_core.spectral import spectral_report
from src.graph_core.union_bounds import degree_imbalance
from src.graph_core.weighted_graph import WeightedGraph
from src.random_groups.models import Presentation
from src.utils.errors import EmptyLink, IdentityViolation

# Configure logging
logger = logging.getLogger(__name__)

FINITENESS_EXPONENT = -1.42


class LinkGraph(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int
    base: WeightedGraph
    parts: Tuple[WeightedGraph, WeightedGraph, WeightedGraph]

    def edge_weight_total(self) -> float:
        """Σ over unordered pairs of ω(s,t); links carry no self-loops"""
        return self.base.total_weight() / 2.0


class LinkSpectralReport(BaseModel):
    n_relators: int
    gap: float
    connected: bool
    isolated: int
    part_gaps: Tuple[float, float, float]
    delta: float


def build_link(pres: Presentation) -> LinkGraph:
    n = 2 * pres.m
    codes = pres.relators
    x, y, z = codes[:, 0], codes[:, 1], codes[:, 2]

    parts = []
    for rows, cols in ((x, y ^ 1), (y, z ^ 1), (z, x ^ 1)):
        if np.any(rows == cols):
            raise IdentityViolation("link edge would be a self-loop; relator not cyclically reduced")
        parts.append(WeightedGraph.from_arrays(n, rows, cols, np.ones(rows.size)))

    base = WeightedGraph(n=n, weights=sp.csr_matrix(parts[0].weights + parts[1].weights + parts[2].weights))
    return LinkGraph(m=pres.m, base=base, parts=tuple(parts))


def link_spectral_report(pres: Presentation) -> LinkSpectralReport:
    """‖A⁰‖ of the link and of its three parts, with the parts' degree imbalance"""
    if pres.n_relators == 0:
        raise EmptyLink("presentation has no relators")
    link = build_link(pres)
    report = spectral_report(link.base)
    part_gaps = tuple(spectral_report(part).restricted_norm for part in link.parts)
    delta = degree_imbalance(*(part.degrees() for part in link.parts))

    return LinkSpectralReport(
        n_relators=pres.n_relators,
        gap=report.restricted_norm,
        connected=report.connected,
        isolated=report.isolated_removed,
        part_gaps=part_gaps,
        delta=delta,
    )


def finiteness_regime_flag(m: int, rho: float) -> bool:
    """True when ρ ≥ m^{−1.42}, where Γ(m, ρ) is finite with overwhelming probability"""
    return rho >= float(m) ** FINITENESS_EXPONENT


def rho_prime(m: int, rho: float) -> float:
    """1 − (1−ρ)^{4m−2}"""
    return 1.0 - (1.0 - rho) ** (4 * m - 2)


def expected_part_density(m: int, rho: float) -> float:
    """
    Expected fraction of letter pairs joined in one part under Γ(m, ρ).

    The m pairs {s, s⁻¹} are hit by 4m−2 relators, every other pair by 4m−4.
    """
    pairs = math.comb(2 * m, 2)
    inverse_pairs = m
    generic = 1.0 - (1.0 - rho) ** (4 * m - 4)
    return (inverse_pairs * rho_prime(m, rho) + (pairs - inverse_pairs) * generic) / pairs


def part_edge_densities(link: LinkGraph) -> Tuple[float, float, float]:
    """Fraction of unordered letter pairs carrying an edge in each part"""
    pairs = math.comb(2 * link.m, 2)
    densities = []
    for part in link.parts:
        upper = sp.triu(part.weights, k=1)
        densities.append(upper.count_nonzero() / pairs if pairs else 0.0)
    return tuple(densities)
