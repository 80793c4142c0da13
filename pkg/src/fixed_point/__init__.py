"""
Fixed Point Module

Simplicial 2-complexes with finite actions, the energy of equivariant maps
and the contraction iteration driven by link-wise p-means.
"""

from .complex import (
    SimplicialComplex2,
    link_of,
    single_triangle,
    octahedron,
    triangulated_cycle_cone,
    load_complex,
)
from .action import FiniteAction, trivial_action, generate_action, load_action
from .energy import EnergyValue, EquivariantMap, energy, map_distance
from .iteration import FixedPointRun, iterate_fixed_point

__all__ = [
    "SimplicialComplex2",
    "link_of",
    "single_triangle",
    "octahedron",
    "triangulated_cycle_cone",
    "load_complex",
    "FiniteAction",
    "trivial_action",
    "generate_action",
    "load_action",
    "EnergyValue",
    "EquivariantMap",
    "energy",
    "map_distance",
    "FixedPointRun",
    "iterate_fixed_point",
]
