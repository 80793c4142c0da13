"""
Spectral analysis of the Markov operator.

A is self-adjoint on L²(V,ν); its spectrum is computed from the symmetrized
matrix B = D^{-1/2} W D^{-1/2} with a dense symmetric eigensolver.
"""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from src.graph_core.weighted_graph import WeightedGraph
from src.utils.errors import EmptyGraph

# Configure logging
logger = logging.getLogger(__name__)

CONNECTED_TOL = 1e-8


class SpectralReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: np.ndarray
    restricted_norm: float
    connected: bool
    bipartite: bool
    isolated_removed: int

    @property
    def mu2(self) -> float:
        return float(self.eigenvalues[1]) if self.eigenvalues.size > 1 else -1.0

    @property
    def mu_min(self) -> float:
        return float(self.eigenvalues[-1])


def _kept_graph(g: WeightedGraph) -> Tuple[WeightedGraph, int]:
    degrees = g.degrees()
    keep = np.flatnonzero(degrees > 0.0)
    if keep.size == 0:
        raise EmptyGraph(f"all {g.n} vertices are isolated")
    removed = g.n - keep.size
    if removed:
        logger.debug(f"Dropping {removed} isolated vertices before spectral analysis")
        return g.induced(keep), removed
    return g, 0


def symmetrized_matrix(g: WeightedGraph) -> np.ndarray:
    """Dense B(s,t) = ω(s,t)/√(d(s)d(t)); g must have no isolated vertices"""
    inv_sqrt = 1.0 / np.sqrt(g.require_no_isolated())
    dense = g.dense()
    return inv_sqrt[:, None] * dense * inv_sqrt[None, :]


def markov_eigenpairs(g: WeightedGraph) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues (descending) and eigenfunctions of A.

    Columns of the second array are L²(ν)-orthogonal eigenfunctions f = D^{-1/2} v.
    """
    values, vectors = scipy.linalg.eigh(symmetrized_matrix(g))
    order = np.argsort(values)[::-1]
    inv_sqrt = 1.0 / np.sqrt(g.degrees())
    return values[order], inv_sqrt[:, None] * vectors[:, order]


def spectral_report(g: WeightedGraph) -> SpectralReport:
    """Full spectrum of A on the non-isolated part of g"""
    kept, removed = _kept_graph(g)
    eigenvalues = scipy.linalg.eigh(symmetrized_matrix(kept), eigvals_only=True)[::-1].copy()

    if eigenvalues.size == 1:
        connected = removed == 0
        restricted = 0.0 if connected else 1.0
        return SpectralReport(eigenvalues=eigenvalues, restricted_norm=restricted,
                              connected=connected, bipartite=False, isolated_removed=removed)

    mu2, mu_n = float(eigenvalues[1]), float(eigenvalues[-1])
    connected = removed == 0 and mu2 < 1.0 - CONNECTED_TOL
    bipartite = connected and mu_n <= -1.0 + CONNECTED_TOL
    restricted = max(abs(mu2), abs(mu_n)) if connected else 1.0

    return SpectralReport(
        eigenvalues=eigenvalues,
        restricted_norm=float(restricted),
        connected=bool(connected),
        bipartite=bool(bipartite),
        isolated_removed=int(removed),
    )


def generalized_spectrum_check(g: WeightedGraph) -> float:
    """Max deviation between eig(B) and the generalized problem W v = μ D v"""
    kept, _ = _kept_graph(g)
    symmetric = scipy.linalg.eigh(symmetrized_matrix(kept), eigvals_only=True)
    generalized = scipy.linalg.eigh(kept.dense(), np.diag(kept.degrees()), eigvals_only=True)
    return float(np.max(np.abs(np.sort(symmetric) - np.sort(generalized))))
