"""
Random Groups Module

Triangular-model presentations and their link graphs.
"""

from .words import (
    Letter,
    Relator,
    is_cyclically_reduced,
    parse_relator,
    relator_count,
    rank_relators,
    unrank_relators,
    enumerate_relators,
)
from .models import (
    Presentation,
    sample_density_model,
    sample_uniform_model,
    sample_binomial_model,
    sample_presentation,
    density_to_binomial,
)
from .link import (
    LinkGraph,
    LinkSpectralReport,
    build_link,
    link_spectral_report,
    finiteness_regime_flag,
    rho_prime,
    part_edge_densities,
)
from .presentation_io import load_presentation, save_presentation

__all__ = [
    "Letter",
    "Relator",
    "is_cyclically_reduced",
    "parse_relator",
    "relator_count",
    "rank_relators",
    "unrank_relators",
    "enumerate_relators",
    "Presentation",
    "sample_density_model",
    "sample_uniform_model",
    "sample_binomial_model",
    "sample_presentation",
    "density_to_binomial",
    "LinkGraph",
    "LinkSpectralReport",
    "build_link",
    "link_spectral_report",
    "finiteness_regime_flag",
    "rho_prime",
    "part_edge_densities",
    "load_presentation",
    "save_presentation",
]
