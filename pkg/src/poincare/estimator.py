"""
Poincaré Estimator

Maximizes the Poincaré ratio by projected gradient ascent with random restarts.
Any evaluated function gives a certified lower bound on π_{p,G}(ℓ^p_k).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict
from scipy.sparse.csgraph import connected_components

from src.config import Config
from src.graph_core.spectral import markov_eigenpairs, spectral_report, symmetrized_matrix
from src.graph_core.weighted_graph import WeightedGraph
from src.poincare.ratio import PoincareRatio, normalize_partition
from src.utils.errors import BadParameter, Disconnected
from src.utils.seeding import child_rng

# Configure logging
logger = logging.getLogger(__name__)

MAX_STEP = 1e3
BACKTRACK_STEPS = 60


class PoincareEstimate(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: float
    k: int
    lower_estimate: float
    witness: np.ndarray
    restarts_used: int
    iterations: int
    upper_bound: Optional[float] = None
    bipartite: bool = False


def require_connected(g: WeightedGraph) -> None:
    if g.has_isolated():
        raise Disconnected(f"graph has {g.isolated_vertices().size} isolated vertices")
    count, _ = connected_components(g.weights, directed=False)
    if count > 1:
        raise Disconnected(f"graph has {count} connected components")


def poincare2_closed_form(report) -> float:
    """1/√(2 − 2μ₂) for a connected graph"""
    if not report.connected:
        raise Disconnected("μ₂ = 1 makes the 2-Poincaré constant infinite")
    return 1.0 / math.sqrt(2.0 - 2.0 * report.mu2)


def _complement_of_parts(g: WeightedGraph, labels: np.ndarray) -> np.ndarray:
    """Orthonormal basis (symmetrized coordinates) of the complement of the part indicators"""
    sqrt_degrees = np.sqrt(g.degrees())
    indicators = np.stack([np.where(labels == part, sqrt_degrees, 0.0) for part in (0, 1)], axis=1)
    return scipy.linalg.null_space(indicators.T)


def bipartite_restricted_top(g: WeightedGraph, partition) -> Tuple[Optional[float], Optional[np.ndarray]]:
    """Largest eigenvalue of A off the part indicators, with its eigenfunction"""
    labels = normalize_partition(g, partition)
    basis = _complement_of_parts(g, labels)
    if basis.shape[1] == 0:
        return None, None
    restricted = basis.T @ symmetrized_matrix(g) @ basis
    values, vectors = scipy.linalg.eigh(restricted)
    eigenfunction = (basis @ vectors[:, -1]) / np.sqrt(g.degrees())
    return float(values[-1]), eigenfunction


def bipartite_poincare2_closed_form(g: WeightedGraph, partition) -> float:
    """1/√(2 − 2μ) with μ the top eigenvalue off the part indicators; 0 when no such function exists"""
    mu, _ = bipartite_restricted_top(g, partition)
    if mu is None:
        return 0.0
    return 1.0 / math.sqrt(2.0 - 2.0 * mu)


def theorem32_upper(p: float, gap: float) -> Optional[float]:
    """(1+2^{2−p})^{−1/p}(1 − 2^{1−2/p} gap^{2/p})^{−1} for L^p targets, if the base is positive"""
    if p < 2:
        return None
    base = 1.0 - 2.0 ** (1.0 - 2.0 / p) * gap ** (2.0 / p)
    if base <= 0.0:
        return None
    return (1.0 + 2.0 ** (2.0 - p)) ** (-1.0 / p) / base


class PoincareEstimator:
    """Projected gradient ascent on the Poincaré ratio with random restarts"""

    def __init__(self, max_iter: int = None, tol: float = None, workers: int = None):
        self.max_iter = Config.POINCARE_MAX_ITER if max_iter is None else max_iter
        self.tol = Config.POINCARE_TOL if tol is None else tol
        self.workers = workers or Config.WORKERS
        logger.info(f"Initializing Poincare Estimator (max_iter={self.max_iter}, tol={self.tol})")

    def ascend(self, evaluator: PoincareRatio, f0: np.ndarray) -> Tuple[float, np.ndarray, int]:
        """
        Ascend p·log R from f0.

        Returns:
            (ratio, witness, iterations); ratio 0 when f0 projects to nothing
        """
        f = evaluator.project(f0)
        if f is None:
            return 0.0, f0, 0
        value = evaluator.log_objective(f)
        ratio = math.exp(value / evaluator.p)
        step = 1.0

        iterations = 0
        for iterations in range(1, self.max_iter + 1):
            direction = evaluator.gradient(f)
            candidate, candidate_value = None, -np.inf
            for _ in range(BACKTRACK_STEPS):
                trial = evaluator.project(f + step * direction)
                if trial is not None:
                    trial_value = evaluator.log_objective(trial)
                    if trial_value > value:
                        candidate, candidate_value = trial, trial_value
                        break
                step *= 0.5
            if candidate is None:
                break

            new_ratio = math.exp(candidate_value / evaluator.p)
            improvement = (new_ratio - ratio) / ratio
            f, value, ratio = candidate, candidate_value, new_ratio
            step = min(2.0 * step, MAX_STEP)
            if improvement < self.tol:
                break

        return evaluator.ratio(f), f, iterations

    def _run(self, evaluator: PoincareRatio, starts: List[np.ndarray]) -> Tuple[float, np.ndarray, int]:
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(lambda f0: self.ascend(evaluator, f0), starts))
        else:
            results = [self.ascend(evaluator, f0) for f0 in starts]

        best_ratio, best_f, total_iterations = -1.0, starts[0], 0
        for ratio, f, iterations in results:
            total_iterations += iterations
            # strict comparison keeps the earliest restart on ties
            if ratio > best_ratio:
                best_ratio, best_f = ratio, f
        return best_ratio, best_f, total_iterations

    @staticmethod
    def _random_starts(n: int, k: int, restarts: int, seed: int, nu: np.ndarray) -> List[np.ndarray]:
        starts = []
        for restart in range(restarts):
            f0 = child_rng(seed, restart).standard_normal((n, k))
            starts.append(f0 - (nu @ f0)[None, :])
        return starts

    @staticmethod
    def _embed(eigenfunction: np.ndarray, k: int) -> np.ndarray:
        start = np.zeros((eigenfunction.size, k))
        start[:, 0] = eigenfunction
        return start

    def estimate(self, g: WeightedGraph, p: float, k: int = 1, restarts: int = None,
                 seed: int = 0) -> PoincareEstimate:
        """
        Lower estimate of π_{p,G}(ℓ^p_k).

        Args:
            g: Connected weighted graph
            p: Exponent > 1
            k: Target dimension
            restarts: Random restarts (defaults to POINCARE_RESTARTS)
            seed: Seed of the per-restart streams

        Returns:
            PoincareEstimate with the best witness found
        """
        if p <= 1:
            raise BadParameter(f"p must exceed 1, got {p}")
        if k < 1:
            raise BadParameter(f"target dimension must be positive, got {k}")
        require_connected(g)
        restarts = Config.POINCARE_RESTARTS if restarts is None else restarts

        evaluator = PoincareRatio(g, p)
        starts = self._random_starts(g.n, k, restarts, seed, evaluator.nu)

        upper_bound = None
        if g.n <= Config.POINCARE_DENSE_CAP:
            eigenvalues, eigenfunctions = markov_eigenpairs(g)
            starts.append(self._embed(eigenfunctions[:, 1], k))
            report = spectral_report(g)
            upper_bound = poincare2_closed_form(report) if p == 2 else theorem32_upper(p, report.restricted_norm)

        logger.debug(f"Estimating π_{p} on {g.n} vertices with {len(starts)} starts")
        ratio, witness, iterations = self._run(evaluator, starts)
        return PoincareEstimate(p=p, k=k, lower_estimate=ratio, witness=witness,
                                restarts_used=len(starts), iterations=iterations,
                                upper_bound=upper_bound)

    def estimate_bipartite(self, g: WeightedGraph, partition, p: float, k: int = 1,
                           restarts: int = None, seed: int = 0) -> PoincareEstimate:
        """Same ascent with the infimum over functions constant on each part"""
        if p <= 1:
            raise BadParameter(f"p must exceed 1, got {p}")
        if k < 1:
            raise BadParameter(f"target dimension must be positive, got {k}")
        labels = normalize_partition(g, partition)
        require_connected(g)
        restarts = Config.POINCARE_RESTARTS if restarts is None else restarts

        evaluator = PoincareRatio(g, p, labels)
        starts = self._random_starts(g.n, k, restarts, seed, evaluator.nu)

        upper_bound = None
        if g.n <= Config.POINCARE_DENSE_CAP:
            mu, eigenfunction = bipartite_restricted_top(g, labels)
            if eigenfunction is not None:
                starts.append(self._embed(eigenfunction, k))
            if p == 2:
                upper_bound = 0.0 if mu is None else 1.0 / math.sqrt(2.0 - 2.0 * mu)

        ratio, witness, iterations = self._run(evaluator, starts)
        return PoincareEstimate(p=p, k=k, lower_estimate=max(ratio, 0.0), witness=witness,
                                restarts_used=len(starts), iterations=iterations,
                                upper_bound=upper_bound, bipartite=True)


# Create a global instance for easy access
poincare_estimator = PoincareEstimator()


def poincare_estimate(g: WeightedGraph, p: float, k: int = 1, restarts: int = None, seed: int = 0) -> PoincareEstimate:
    return poincare_estimator.estimate(g, p, k, restarts, seed)


def bipartite_poincare_estimate(g: WeightedGraph, partition, p: float, k: int = 1,
                                restarts: int = None, seed: int = 0) -> PoincareEstimate:
    return poincare_estimator.estimate_bipartite(g, partition, p, k, restarts, seed)
