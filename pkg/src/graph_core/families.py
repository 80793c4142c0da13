"""Stock graphs used by tests, the CLI and the fixed point demos."""

import itertools

import numpy as np

from src.graph_core.weighted_graph import WeightedGraph


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    rows, cols = np.triu_indices(n, k=1)
    return WeightedGraph.from_arrays(n, rows, cols, np.full(rows.size, weight))


def complete_bipartite_graph(n: int) -> WeightedGraph:
    """K_{n,n}: parts {0..n-1} and {n..2n-1}"""
    pairs = np.array(list(itertools.product(range(n), range(n, 2 * n))), dtype=np.int64)
    return WeightedGraph.from_arrays(2 * n, pairs[:, 0], pairs[:, 1], np.ones(len(pairs)))


def cycle_graph(n: int) -> WeightedGraph:
    rows = np.arange(n)
    return WeightedGraph.from_arrays(n, rows, (rows + 1) % n, np.ones(n))


def path_graph(n: int) -> WeightedGraph:
    rows = np.arange(n - 1)
    return WeightedGraph.from_arrays(n, rows, rows + 1, np.ones(n - 1))


def star_graph(k: int) -> WeightedGraph:
    """Centre 0 joined to leaves 1..k"""
    leaves = np.arange(1, k + 1)
    return WeightedGraph.from_arrays(k + 1, np.zeros(k, dtype=np.int64), leaves, np.ones(k))


def random_weighted_graph(n: int, rng: np.random.Generator, density: float = 1.0,
                          low: float = 0.1, high: float = 1.0) -> WeightedGraph:
    """Each pair kept with probability density, weight uniform on [low, high)"""
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < density
    values = rng.uniform(low, high, size=int(keep.sum()))
    return WeightedGraph.from_arrays(n, rows[keep], cols[keep], values)
