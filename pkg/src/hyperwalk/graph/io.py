"""Finite graph ingestion: JSON ``{"n": .., "edges": [[a, b], ..]}`` or edge-list text."""
import logging
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

from hyperwalk.exceptions import GraphError
from hyperwalk.graph.core import FiniteGraph

logger = logging.getLogger("hyperwalk.graph.io")


class GraphFile(BaseModel):
    n: int = Field(ge=1, description="Number of vertices, ids 0..n-1")
    edges: list[tuple[int, int]] = Field(default_factory=list, description="Undirected edges")


def parse_graph_json(text: str, name: str = "") -> FiniteGraph:
    try:
        data = GraphFile.model_validate_json(text)
    except ValidationError as e:
        raise GraphError(f"invalid graph JSON: {e}") from e
    return FiniteGraph.from_edges(data.n, data.edges, name=name)


def parse_edge_list(text: str, name: str = "") -> FiniteGraph:
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise GraphError("empty edge list: first line must hold the vertex count")
    try:
        n = int(lines[0])
        edges = []
        for lineno, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: expected 'a b', got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as e:
        raise GraphError(f"invalid edge list: {e}") from e
    return FiniteGraph.from_edges(n, edges, name=name)


def load_graph(path: Path | str) -> FiniteGraph:
    """Load a finite graph; ``.json`` files use the JSON format, anything else the edge list."""
    path = Path(path)
    if not path.exists():
        raise GraphError(f"graph file not found: {path}")
    text = path.read_text()
    logger.info(f"Loading graph from {path}")
    if path.suffix.lower() == ".json":
        return parse_graph_json(text, name=f"file:{path}")
    return parse_edge_list(text, name=f"file:{path}")
