"""
Finite simplicial 2-complexes and their vertex links.

The link L(m) has one vertex per edge {m, n} and ω(s, t) = number of
triangles having both s and t as faces. Link vertices are ordered by the
other endpoint n.
"""

import itertools
import logging
from pathlib import Path
from typing import Iterable, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.graph_core.weighted_graph import WeightedGraph
from src.utils.errors import BadParameter, IndexOutOfRange, ParseError, UnknownVertex

# Configure logging
logger = logging.getLogger(__name__)


class SimplicialComplex2(BaseModel):
    """Vertices 0..n-1, sorted edge pairs and sorted triangle triples"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    edges: np.ndarray
    triangles: np.ndarray

    @model_validator(mode="after")
    def _check(self):
        if self.n < 1:
            raise BadParameter(f"complex needs at least one vertex, got {self.n}")
        edge_set = {tuple(e) for e in self.edges.tolist()}
        for tri in self.triangles.tolist():
            for face in itertools.combinations(tri, 2):
                if face not in edge_set:
                    raise BadParameter(f"triangle {tuple(tri)} is missing its face {face}")
        return self

    @classmethod
    def from_simplices(cls, n: int, triangles: Iterable[Sequence[int]] = (),
                       edges: Iterable[Sequence[int]] = ()) -> "SimplicialComplex2":
        """Build the downward closure of the given triangles and edges"""
        tri_set = set()
        for tri in triangles:
            tri = tuple(sorted(int(v) for v in tri))
            _check_vertices(tri, n)
            if len(set(tri)) != 3:
                raise BadParameter(f"degenerate triangle {tri}")
            tri_set.add(tri)

        edge_set = set()
        for edge in edges:
            edge = tuple(sorted(int(v) for v in edge))
            _check_vertices(edge, n)
            if edge[0] == edge[1]:
                raise BadParameter(f"degenerate edge {edge}")
            edge_set.add(edge)
        for tri in tri_set:
            edge_set.update(itertools.combinations(tri, 2))

        edge_array = np.array(sorted(edge_set), dtype=np.int64).reshape(-1, 2)
        tri_array = np.array(sorted(tri_set), dtype=np.int64).reshape(-1, 3)
        return cls(n=n, edges=edge_array, triangles=tri_array)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(map(tuple, self.edges.tolist()))
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def neighbors(self, vertex: int) -> np.ndarray:
        if not 0 <= vertex < self.n:
            raise UnknownVertex(vertex)
        e = self.edges
        others = np.concatenate([e[e[:, 0] == vertex, 1], e[e[:, 1] == vertex, 0]])
        return np.sort(others)


def _check_vertices(simplex: Tuple[int, ...], n: int) -> None:
    for v in simplex:
        if not 0 <= v < n:
            raise IndexOutOfRange(v, n)


def link_data(complex_: SimplicialComplex2, vertex: int) -> Tuple[np.ndarray, WeightedGraph]:
    """Neighbors n (one per link vertex, in link order) and the link graph"""
    neighbors = complex_.neighbors(vertex)
    position = {int(n): i for i, n in enumerate(neighbors)}

    tris = complex_.triangles
    containing = tris[np.any(tris == vertex, axis=1)]
    rows, cols = [], []
    for tri in containing.tolist():
        a, b = [v for v in tri if v != vertex]
        rows.append(position[a])
        cols.append(position[b])
    graph = WeightedGraph.from_arrays(neighbors.size, np.array(rows), np.array(cols), np.ones(len(rows)))
    return neighbors, graph


def link_of(complex_: SimplicialComplex2, vertex: int) -> WeightedGraph:
    return link_data(complex_, vertex)[1]


def link_is_connected(graph: WeightedGraph) -> bool:
    if graph.n == 0 or graph.has_isolated():
        return False
    return nx.is_connected(nx.from_scipy_sparse_array(graph.weights))


def single_triangle() -> SimplicialComplex2:
    return SimplicialComplex2.from_simplices(3, [(0, 1, 2)])


def octahedron() -> SimplicialComplex2:
    """Vertices 2i and 2i+1 are antipodal; every vertex link is C₄"""
    triangles = [(a, 2 + b, 4 + c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    return SimplicialComplex2.from_simplices(6, triangles)


def triangulated_cycle_cone(n: int) -> SimplicialComplex2:
    """Cone over the n-cycle 0..n-1 with apex n"""
    if n < 3:
        raise BadParameter(f"cycle length must be >= 3, got {n}")
    return SimplicialComplex2.from_simplices(n + 1, [(i, (i + 1) % n, n) for i in range(n)])


def parse_complex(text: str, source: str = "<input>") -> SimplicialComplex2:
    """
    "v <n>" then one "t i j k" per triangle; "e i j" adds a bare edge.
    Blank lines and # comments are skipped.
    """
    n = None
    triangles, edges = [], []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens[1:]]
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", line_number, source)
        if n is None:
            if tokens[0] != "v" or len(values) != 1:
                raise ParseError("expected header 'v <n>'", line_number, source)
            n = values[0]
        elif tokens[0] == "t" and len(values) == 3:
            triangles.append(values)
        elif tokens[0] == "e" and len(values) == 2:
            edges.append(values)
        else:
            raise ParseError(f"unrecognised line {line!r}", line_number, source)
    if n is None:
        raise ParseError("missing header", None, source)
    try:
        return SimplicialComplex2.from_simplices(n, triangles, edges)
    except (BadParameter, IndexOutOfRange) as e:
        raise ParseError(str(e), None, source)


def load_complex(path: Union[str, Path]) -> SimplicialComplex2:
    path = Path(path)
    logger.info(f"Loading complex from {path}")
    return parse_complex(path.read_text(), str(path))
