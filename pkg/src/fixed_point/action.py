"""
Finite groups acting on a complex by vertex permutations.

Elements are rows of an (|Γ|, n) array; (g∘h)(m) = g[h[m]]. The action on
the target space is trivial, so equivariant maps are constant on orbits.
"""

import logging
import re
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.fixed_point.complex import SimplicialComplex2
from src.utils.errors import BadParameter, ParseError

# Configure logging
logger = logging.getLogger(__name__)

_CYCLE = re.compile(r"\(([^()]*)\)")


class FiniteAction(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    complex: SimplicialComplex2
    elements: np.ndarray

    @model_validator(mode="after")
    def _check(self):
        n = self.complex.n
        elements = self.elements
        if elements.ndim != 2 or elements.shape[1] != n:
            raise BadParameter(f"group elements must be permutations of {n} vertices")
        identity = np.arange(n)
        for row in elements:
            if not np.array_equal(np.sort(row), identity):
                raise BadParameter(f"{row.tolist()} is not a permutation")

        keys = {row.tobytes() for row in elements}
        if len(keys) != len(elements):
            raise BadParameter("duplicate group elements")
        if identity.astype(elements.dtype).tobytes() not in keys:
            raise BadParameter("group lacks the identity")
        for g in elements:
            if np.argsort(g).astype(elements.dtype).tobytes() not in keys:
                raise BadParameter("group is not closed under inverses")
            for h in elements:
                if g[h].tobytes() not in keys:
                    raise BadParameter("group is not closed under composition")

        for simplices in (self.complex.edges, self.complex.triangles):
            present = {tuple(s) for s in simplices.tolist()}
            for g in elements:
                for s in simplices:
                    if tuple(sorted(g[s].tolist())) not in present:
                        raise BadParameter(f"element {g.tolist()} does not preserve simplex {tuple(s.tolist())}")
        return self

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def orbit_labels(self) -> np.ndarray:
        """For each vertex, the smallest vertex of its orbit"""
        return self.elements.min(axis=0)

    def representatives(self) -> np.ndarray:
        """Ξ₀: the smallest vertex of every orbit"""
        return np.unique(self.orbit_labels())

    def stabilizer_order(self, vertex: int) -> int:
        return int(np.sum(self.elements[:, vertex] == vertex))

    def stabilizer_orders(self) -> Dict[int, int]:
        return {int(m): self.stabilizer_order(int(m)) for m in self.representatives()}


def trivial_action(complex_: SimplicialComplex2) -> FiniteAction:
    return FiniteAction(complex=complex_, elements=np.arange(complex_.n, dtype=np.int64)[None, :])


def generate_action(complex_: SimplicialComplex2, generators: Iterable[Sequence[int]]) -> FiniteAction:
    """Close a set of generating permutations under composition"""
    n = complex_.n
    identity = np.arange(n, dtype=np.int64)
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    for g in gens:
        if g.shape != (n,) or not np.array_equal(np.sort(g), identity):
            raise BadParameter(f"generator {g.tolist()} is not a permutation of {n} vertices")

    seen = {identity.tobytes(): identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for g in gens:
                product = g[element]
                key = product.tobytes()
                if key not in seen:
                    seen[key] = product
                    next_frontier.append(product)
        frontier = next_frontier

    elements = np.stack([seen[key] for key in sorted(seen)])
    logger.debug(f"Generated a group of order {len(elements)} from {len(gens)} generator(s)")
    return FiniteAction(complex=complex_, elements=elements)


def parse_permutation(line: str, n: int) -> np.ndarray:
    """Cycle notation such as "(0 1 2)(3 4)"; "()" is the identity"""
    permutation = np.arange(n, dtype=np.int64)
    remainder = _CYCLE.sub("", line).strip()
    if remainder:
        raise ParseError(f"unexpected text {remainder!r} outside cycles")
    for body in _CYCLE.findall(line):
        try:
            cycle = [int(t) for t in body.replace(",", " ").split()]
        except ValueError:
            raise ParseError(f"non-integer vertex in cycle ({body})")
        if len(set(cycle)) != len(cycle) or any(not 0 <= v < n for v in cycle):
            raise ParseError(f"bad cycle ({body}) for {n} vertices")
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            permutation[a] = b
    return permutation


def parse_action(text: str, complex_: SimplicialComplex2, source: str = "<input>") -> FiniteAction:
    generators: List[np.ndarray] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            try:
                generators.append(parse_permutation(line, complex_.n))
            except ParseError as e:
                raise ParseError(str(e), line_number, source)
    try:
        return generate_action(complex_, generators)
    except BadParameter as e:
        raise ParseError(str(e), None, source)


def load_action(path: Union[str, Path], complex_: SimplicialComplex2) -> FiniteAction:
    path = Path(path)
    logger.info(f"Loading action from {path}")
    return parse_action(path.read_text(), complex_, str(path))
