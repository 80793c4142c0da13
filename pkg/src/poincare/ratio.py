"""
The Poincaré ratio

    R(f) = inf_g ‖f − g‖_{L^p(ν; ℓ^p_k)} / ‖∇f‖_{L^p(ℙ; ℓ^p_k)}

where g ranges over constants, or over functions constant on each part of a
bipartition. Gradients are taken in the L²(ν) geometry so that a unit step is
meaningful on every vertex.
"""

from typing import List, Optional, Tuple

import networkx as nx
import numpy as np
import scipy.sparse as sp

from src.graph_core.weighted_graph import WeightedGraph, as_vertex_function
from src.poincare.lp_tools import lp_center, signed_power
from src.utils.errors import BadParameter, NotBipartite


def normalize_partition(g: WeightedGraph, partition) -> np.ndarray:
    """
    Accept a 0/1 label vector or a pair of vertex collections and return labels.

    Every edge of g must join the two parts.
    """
    if len(partition) == 2 and not np.isscalar(partition[0]):
        labels = np.full(g.n, -1, dtype=np.int64)
        for label, part in enumerate(partition):
            labels[np.asarray(list(part), dtype=np.int64)] = label
    else:
        labels = np.asarray(partition, dtype=np.int64)
    if labels.shape != (g.n,) or np.any((labels != 0) & (labels != 1)):
        raise NotBipartite("partition must assign every vertex to part 0 or part 1")

    rows, cols, _ = g.ordered_edges()
    inside = labels[rows] == labels[cols]
    if np.any(inside):
        raise NotBipartite(f"edge ({rows[inside][0]}, {cols[inside][0]}) lies inside one part")
    return labels


def find_bipartition(g: WeightedGraph) -> np.ndarray:
    """Label vector of a bipartition of a connected graph"""
    graph = nx.from_scipy_sparse_array(g.weights)
    if not nx.is_connected(graph) or not nx.is_bipartite(graph):
        raise NotBipartite("graph is not a connected bipartite graph")
    colouring = nx.bipartite.color(graph)
    return np.array([colouring[s] for s in range(g.n)], dtype=np.int64)


class PoincareRatio:
    """Evaluator of R(f) and of the gradient of p·log R(f) for one graph"""

    def __init__(self, g: WeightedGraph, p: float, labels: Optional[np.ndarray] = None):
        if p <= 1:
            raise BadParameter(f"p must exceed 1, got {p}")
        degrees = g.require_no_isolated()
        total = degrees.sum()

        self.g = g
        self.p = float(p)
        self.nu = degrees / total
        self.rows, self.cols, weights = g.ordered_edges()
        self.prob = weights / total
        self.incidence = sp.csr_matrix(
            (np.ones(self.rows.size), (self.rows, np.arange(self.rows.size))),
            shape=(g.n, self.rows.size),
        )
        if labels is None:
            self.parts: List[np.ndarray] = [np.arange(g.n)]
        else:
            self.parts = [np.flatnonzero(labels == 0), np.flatnonzero(labels == 1)]

    def deviation(self, f: np.ndarray) -> np.ndarray:
        """f − g* where g* attains the infimum (per part)"""
        deviation = np.empty_like(f)
        for part in self.parts:
            center = lp_center(f[part], self.nu[part], self.p)
            deviation[part] = f[part] - center[None, :]
        return deviation

    def numerator(self, deviation: np.ndarray) -> float:
        return float(self.nu @ np.sum(np.abs(deviation) ** self.p, axis=1))

    def denominator(self, f: np.ndarray) -> float:
        differences = f[self.cols] - f[self.rows]
        return float(self.prob @ np.sum(np.abs(differences) ** self.p, axis=1))

    def ratio(self, f) -> float:
        f = self._columns(f)
        denominator = self.denominator(f)
        if denominator <= 0.0:
            return 0.0
        return (self.numerator(self.deviation(f)) / denominator) ** (1.0 / self.p)

    def log_objective(self, f: np.ndarray) -> float:
        """p·log R(f), −inf when R(f) = 0"""
        numerator = self.numerator(self.deviation(f))
        denominator = self.denominator(f)
        if numerator <= 0.0 or denominator <= 0.0:
            return -np.inf
        return float(np.log(numerator) - np.log(denominator))

    def gradient(self, f: np.ndarray) -> np.ndarray:
        """L²(ν) gradient of p·log R at f"""
        deviation = self.deviation(f)
        numerator = self.numerator(deviation)
        denominator = self.denominator(f)
        grad_numerator = self.p * signed_power(deviation, self.p - 1.0)
        edge_terms = self.prob[:, None] * signed_power(f[self.rows] - f[self.cols], self.p - 1.0)
        grad_denominator = 2.0 * self.p * (self.incidence @ edge_terms) / self.nu[:, None]
        return grad_numerator / numerator - grad_denominator / denominator

    def project(self, f: np.ndarray) -> Optional[np.ndarray]:
        """Shift by the ν-mean and rescale to unit numerator; None for part-constant f"""
        f = f - (self.nu @ f)[None, :]
        numerator = self.numerator(self.deviation(f))
        if numerator <= 0.0:
            return None
        return f / numerator ** (1.0 / self.p)

    def _columns(self, f) -> np.ndarray:
        values = as_vertex_function(self.g, f)
        return values[:, None] if values.ndim == 1 else values


def poincare_ratio(g: WeightedGraph, f, p: float) -> float:
    """R(f) with the infimum over constants"""
    return PoincareRatio(g, p).ratio(f)


def bipartite_poincare_ratio(g: WeightedGraph, partition, f, p: float) -> float:
    """R(f) with the infimum over functions constant on each part"""
    return PoincareRatio(g, p, normalize_partition(g, partition)).ratio(f)


def ratio_terms(g: WeightedGraph, f, p: float) -> Tuple[float, float]:
    """(inf_x ‖f − x‖_p, ‖∇f‖_p) as norms, not p-th powers"""
    evaluator = PoincareRatio(g, p)
    values = evaluator._columns(f)
    return (evaluator.numerator(evaluator.deviation(values)) ** (1.0 / p),
            evaluator.denominator(values) ** (1.0 / p))
