"""
Graph interchange format.

    n <vertex_count>
    s t w
    ...

Indices are 0-based. Entries for the same unordered pair are summed on load,
so asymmetric duplicates are never rejected.
"""

import logging
from pathlib import Path
from typing import Union

from src.graph_core.weighted_graph import WeightedGraph, build_graph
from src.utils.errors import ParseError

# Configure logging
logger = logging.getLogger(__name__)


def parse_graph(text: str, source: str = "<input>") -> WeightedGraph:
    n = None
    entries = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise ParseError("expected header 'n <vertex_count>'", line_number, source)
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad vertex count {tokens[1]!r}", line_number, source)
            continue
        if len(tokens) != 3:
            raise ParseError(f"expected 's t w', got {line!r}", line_number, source)
        try:
            entries.append((int(tokens[0]), int(tokens[1]), float(tokens[2])))
        except ValueError:
            raise ParseError(f"non-numeric entry {line!r}", line_number, source)

    if n is None:
        raise ParseError("missing header 'n <vertex_count>'", None, source)
    return build_graph(n, entries)


def load_graph(path: Union[str, Path]) -> WeightedGraph:
    path = Path(path)
    logger.info(f"Loading graph from {path}")
    return parse_graph(path.read_text(), str(path))


def format_graph(g: WeightedGraph) -> str:
    """One line per unordered pair s ≤ t carrying ω(s,t)"""
    rows, cols, values = g.ordered_edges()
    lines = [f"n {g.n}"]
    for s, t, w in sorted(zip(rows.tolist(), cols.tolist(), values.tolist())):
        if s <= t:
            lines.append(f"{s} {t} {w!r}")
    return "\n".join(lines) + "\n"


def save_graph(g: WeightedGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(format_graph(g))
