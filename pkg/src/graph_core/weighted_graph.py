"""
Weighted Graph

Finite weighted graphs (V, ω) with symmetric nonnegative weights, the random
walk measures ν and ℙ, and the Markov operator A.
"""

import logging
from typing import Iterable, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from src.utils.errors import BadParameter, IndexOutOfRange, IsolatedVertex, NegativeWeight, ShapeMismatch

# Configure logging
logger = logging.getLogger(__name__)

WeightEntry = Tuple[int, int, float]


class WeightedGraph(BaseModel):
    """Symmetric sparse weight matrix on vertices 0..n-1"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    weights: sp.csr_matrix

    @classmethod
    def from_arrays(cls, n: int, rows: np.ndarray, cols: np.ndarray, values: np.ndarray) -> "WeightedGraph":
        """
        Build a graph from validated unordered entries.

        Off-diagonal entries are mirrored; diagonal entries count once.
        Duplicates are summed.
        """
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        values = np.asarray(values, dtype=float)
        off = rows != cols
        all_rows = np.concatenate([rows, cols[off]])
        all_cols = np.concatenate([cols, rows[off]])
        all_values = np.concatenate([values, values[off]])
        matrix = sp.coo_matrix((all_values, (all_rows, all_cols)), shape=(n, n)).tocsr()
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        return cls(n=n, weights=sp.csr_matrix(matrix))

    @classmethod
    def empty(cls, n: int) -> "WeightedGraph":
        return cls(n=n, weights=sp.csr_matrix((n, n), dtype=float))

    def degrees(self) -> np.ndarray:
        return np.asarray(self.weights.sum(axis=1), dtype=float).ravel()

    def total_weight(self) -> float:
        """Σ_{s,t} ω(s,t) over ordered pairs"""
        return float(self.weights.sum())

    def isolated_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.degrees() <= 0.0)

    def has_isolated(self) -> bool:
        return self.isolated_vertices().size > 0

    def weight(self, s: int, t: int) -> float:
        return float(self.weights[s, t])

    def dense(self) -> np.ndarray:
        return self.weights.toarray()

    def ordered_edges(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Ordered pairs (s, t) with ω(s,t) > 0 and their weights"""
        coo = self.weights.tocoo()
        return coo.row.astype(np.int64), coo.col.astype(np.int64), coo.data.astype(float)

    def scaled(self, c: float) -> "WeightedGraph":
        if c <= 0:
            raise BadParameter(f"scale factor must be positive, got {c}")
        return WeightedGraph(n=self.n, weights=sp.csr_matrix(self.weights * c))

    def induced(self, keep: np.ndarray) -> "WeightedGraph":
        keep = np.asarray(keep, dtype=np.int64)
        sub = self.weights[keep][:, keep]
        return WeightedGraph(n=int(keep.size), weights=sp.csr_matrix(sub))

    def require_no_isolated(self) -> np.ndarray:
        """Return the degree vector, raising IsolatedVertex on the first zero degree"""
        degrees = self.degrees()
        isolated = np.flatnonzero(degrees <= 0.0)
        if isolated.size:
            raise IsolatedVertex(int(isolated[0]))
        return degrees


class RandomWalkMeasures(BaseModel):
    """Stationary vertex measure ν and edge measure ℙ"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nu: np.ndarray
    edge_prob: sp.csr_matrix


def build_graph(n: int, weight_entries: Iterable[Sequence[float]]) -> WeightedGraph:
    """
    Validate weight entries (s, t, w) and build the symmetric closure.

    Args:
        n: Vertex count
        weight_entries: Iterable of (s, t, w); duplicates for one unordered pair are summed

    Returns:
        The validated WeightedGraph
    """
    if int(n) != n or n < 1:
        raise BadParameter(f"vertex count must be a positive integer, got {n}")
    n = int(n)

    rows, cols, values = [], [], []
    for entry in weight_entries:
        if len(entry) != 3:
            raise BadParameter(f"weight entry must be (s, t, w), got {entry!r}")
        s, t, w = entry
        for index in (s, t):
            if int(index) != index or not 0 <= index < n:
                raise IndexOutOfRange(index, n)
        w = float(w)
        if np.isnan(w) or np.isinf(w):
            raise BadParameter(f"weight on ({s}, {t}) must be finite, got {w}")
        if w < 0:
            raise NegativeWeight(int(s), int(t), w)
        rows.append(int(s))
        cols.append(int(t))
        values.append(w)

    graph = WeightedGraph.from_arrays(n, np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
                                      np.array(values))
    logger.debug(f"Built graph with {n} vertices and {graph.weights.nnz} stored weights")
    return graph


def measures(g: WeightedGraph) -> RandomWalkMeasures:
    """ν(s) = d(s)/Σd and ℙ(s,t) = ω(s,t)/Σω"""
    degrees = g.require_no_isolated()
    total = degrees.sum()
    return RandomWalkMeasures(nu=degrees / total, edge_prob=sp.csr_matrix(g.weights / total))


def as_vertex_function(g: WeightedGraph, f) -> np.ndarray:
    """Coerce f to a float array with one row per vertex"""
    values = np.asarray(f, dtype=float)
    if values.ndim not in (1, 2) or values.shape[0] != g.n:
        raise ShapeMismatch(f"function has shape {values.shape}, expected ({g.n},) or ({g.n}, k)")
    return values


def markov_apply(g: WeightedGraph, f) -> np.ndarray:
    """A f(s) = (1/d(s)) Σ_t ω(s,t) f(t)"""
    values = as_vertex_function(g, f)
    degrees = g.require_no_isolated()
    averaged = g.weights @ values
    if values.ndim == 1:
        return averaged / degrees
    return averaged / degrees[:, None]
