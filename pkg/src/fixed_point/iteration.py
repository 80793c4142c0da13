"""
Contraction iteration for equivariant maps.

One step: for each orbit representative m take ψ(m) = the ν_m-weighted
p-mean of φ over the far endpoints of L(m), extend ψ along orbits, and
replace φ by (φ + ψ)/2. With links whose Poincaré constants stay below
c < 1 the energy contracts by c per step.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.config import Config
from src.fixed_point.action import FiniteAction
from src.fixed_point.energy import LocalLink, as_map, energy, local_links, map_distance
from src.poincare.lp_tools import p_mean
from src.utils.errors import BadParameter, Disconnected, DisconnectedLink, MaxIterExceeded

# Configure logging
logger = logging.getLogger(__name__)


class FixedPointRun(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi_final: np.ndarray
    energy_trace: List[float]
    contraction_ratios: List[float]
    distances: List[float]
    iterations: int
    converged: bool


class FixedPointIterator:
    """Runs the midpoint iteration on one complex with one action"""

    def __init__(self, action: FiniteAction, p: float, workers: int = None):
        if p <= 1:
            raise BadParameter(f"p must exceed 1, got {p}")
        if not action.complex.is_connected():
            raise Disconnected("complex is not connected")
        self.action = action
        self.p = float(p)
        self.workers = workers or Config.WORKERS
        self.links: List[LocalLink] = local_links(action)
        for link in self.links:
            if not link.connected:
                raise DisconnectedLink(link.vertex)
        logger.debug(f"Initializing Fixed Point Iterator: {len(self.links)} representative(s), p={p}")

    def _local_mean(self, phi: np.ndarray, link: LocalLink) -> np.ndarray:
        return p_mean(link.nu, phi[link.neighbors], self.p)

    def step_target(self, phi: np.ndarray) -> np.ndarray:
        """ψ: the link-wise p-means, extended along orbits"""
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                means = list(pool.map(lambda link: self._local_mean(phi, link), self.links))
        else:
            means = [self._local_mean(phi, link) for link in self.links]

        # the target action is trivial, so each Γ_m-orbit average of ψ(m) is ψ(m) itself
        by_rep = {link.vertex: mean for link, mean in zip(self.links, means)}
        labels = self.action.orbit_labels()
        return np.stack([by_rep[int(label)] for label in labels])

    def run(self, phi0, tol: float = None, max_iter: int = None) -> FixedPointRun:
        tol = Config.FIXED_POINT_TOL if tol is None else tol
        max_iter = Config.FIXED_POINT_MAX_ITER if max_iter is None else max_iter
        phi = as_map(self.action, phi0)

        trace = [energy(self.action, phi, p=self.p, links=self.links).value]
        ratios: List[float] = []
        distances: List[float] = []

        def result(converged: bool) -> FixedPointRun:
            return FixedPointRun(phi_final=phi, energy_trace=trace, contraction_ratios=ratios,
                                 distances=distances, iterations=len(ratios), converged=converged)

        if trace[0] < tol:
            return result(True)

        for step in range(max_iter):
            psi = self.step_target(phi)
            updated = (phi + psi) / 2.0
            distances.append(map_distance(self.action, phi, updated, self.p, links=self.links))
            phi = updated
            current = energy(self.action, phi, p=self.p, links=self.links).value
            ratios.append(current / trace[-1])
            trace.append(current)
            logger.debug(f"Step {step + 1}: E={current:.3e}, ratio={ratios[-1]:.4f}")
            if current < tol:
                logger.info(f"Fixed point iteration converged after {step + 1} step(s)")
                return result(True)

        raise MaxIterExceeded(f"energy {trace[-1]:.3e} still above {tol} after {max_iter} steps",
                              partial=result(False))


def iterate_fixed_point(action: FiniteAction, phi0, p: float, k: Optional[int] = None,
                        tol: float = None, max_iter: int = None, workers: int = None) -> FixedPointRun:
    """
    Iterate φ ← (φ + ψ)/2 until E(φ) < tol.

    Args:
        action: Group action; its complex must be connected with connected links
        phi0: Initial equivariant map, shape (n,) or (n, k)
        p: Norm exponent > 1
        k: Expected target dimension, checked when given

    Raises:
        DisconnectedLink: some representative's link is disconnected
        MaxIterExceeded: carries the partial FixedPointRun
    """
    if k is not None:
        as_map(action, phi0, k)
    return FixedPointIterator(action, p, workers).run(phi0, tol, max_iter)
