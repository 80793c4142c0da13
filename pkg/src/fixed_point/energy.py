"""
Energy of equivariant maps M₀ → (ℝ^k, ℓ^p).

For orbit representatives m with link L(m) = (V, ω), a_m = Σ_{s,t} ω(s,t)/|Γ_m|
and

    E(φ,ψ)^p = Σ_m a_m Σ_{s,t} ℙ_m(s,t) ‖φ(n_s) − ψ(n_t)‖^p
             = Σ_m a_m Σ_s ν_m(s) ‖φ(n_s) − ψ(m)‖^p

where n_s is the far endpoint of the link vertex s. Both sides are evaluated
and must agree.
"""

import logging
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.fixed_point.action import FiniteAction
from src.fixed_point.complex import link_data, link_is_connected
from src.utils.errors import BadParameter, IdentityViolation, NotEquivariant, ShapeMismatch

# Configure logging
logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-10


class LocalLink(BaseModel):
    """Link data of one orbit representative"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertex: int
    neighbors: np.ndarray
    nu: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    prob: np.ndarray
    a_m: float
    connected: bool


class EnergyValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: float
    value: float
    power: float
    contributions: Dict[int, float]
    weights: Dict[int, float]


class EquivariantMap(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    p: float


def local_links(action: FiniteAction) -> List[LocalLink]:
    stabilizers = action.stabilizer_orders()
    links = []
    for m in action.representatives().tolist():
        neighbors, graph = link_data(action.complex, m)
        total = graph.total_weight()
        degrees = graph.degrees()
        rows, cols, weights = graph.ordered_edges()
        links.append(LocalLink(
            vertex=m,
            neighbors=neighbors,
            nu=degrees / total if total > 0 else np.zeros_like(degrees),
            rows=rows,
            cols=cols,
            prob=weights / total if total > 0 else weights,
            a_m=total / stabilizers[m],
            connected=link_is_connected(graph),
        ))
    return links


def as_map(action: FiniteAction, values, k: Optional[int] = None) -> np.ndarray:
    """(n, k) float array, checked for shape and constancy on orbits"""
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    n = action.complex.n
    if values.ndim != 2 or values.shape[0] != n or (k is not None and values.shape[1] != k):
        raise ShapeMismatch(f"map must have shape ({n}, {k or 'k'}), got {values.shape}")
    labels = action.orbit_labels()
    if not np.allclose(values, values[labels], rtol=0.0, atol=1e-12):
        raise NotEquivariant("map is not constant on orbits of the action")
    return values


def equivariant_map(action: FiniteAction, values, p: float) -> EquivariantMap:
    return EquivariantMap(values=as_map(action, values), p=p)


def _row_powers(diff: np.ndarray, p: float) -> np.ndarray:
    return np.sum(np.abs(diff) ** p, axis=1)


def energy_terms(links: List[LocalLink], phi: np.ndarray, psi: np.ndarray, p: float):
    """Per-representative (pairwise form, centered form), already weighted by a_m"""
    pairwise, centered = {}, {}
    for link in links:
        if link.a_m == 0:
            pairwise[link.vertex] = centered[link.vertex] = 0.0
            continue
        far = link.neighbors
        gradient = phi[far[link.rows]] - psi[far[link.cols]]
        pairwise[link.vertex] = link.a_m * float(link.prob @ _row_powers(gradient, p))
        spread = phi[far] - psi[link.vertex][None, :]
        centered[link.vertex] = link.a_m * float(link.nu @ _row_powers(spread, p))
    return pairwise, centered


def energy(action: FiniteAction, phi, psi=None, p: float = 2.0, links: List[LocalLink] = None) -> EnergyValue:
    """
    E(φ, ψ), or E(φ) when ψ is omitted.

    Raises:
        ShapeMismatch: maps of different or wrong shape
        NotEquivariant: a map is not constant on orbits
        IdentityViolation: the two expressions of E^p disagree
    """
    if p < 1:
        raise BadParameter(f"p must be >= 1, got {p}")
    phi = as_map(action, phi)
    psi = phi if psi is None else as_map(action, psi, phi.shape[1])
    links = local_links(action) if links is None else links

    pairwise, centered = energy_terms(links, phi, psi, p)
    first = sum(pairwise.values())
    second = sum(centered.values())
    if abs(first - second) > IDENTITY_TOL * max(1.0, abs(first)):
        raise IdentityViolation(f"energy expressions disagree: {first!r} vs {second!r}")

    return EnergyValue(
        p=p,
        value=float(max(second, 0.0) ** (1.0 / p)),
        power=float(second),
        contributions=centered,
        weights={link.vertex: link.a_m for link in links},
    )


def map_distance(action: FiniteAction, phi, psi, p: float, links: List[LocalLink] = None) -> float:
    """d(φ,ψ) = (Σ_m a_m ‖φ(m) − ψ(m)‖^p)^{1/p}"""
    phi = as_map(action, phi)
    psi = as_map(action, psi, phi.shape[1])
    links = local_links(action) if links is None else links
    vertices = np.array([link.vertex for link in links], dtype=np.int64)
    a = np.array([link.a_m for link in links])
    return float((a @ _row_powers(phi[vertices] - psi[vertices], p)) ** (1.0 / p))
