import networkx as nx

from hyperwalk.exceptions import GraphError
from hyperwalk.graph.core import FiniteGraph


def line_graph(g: FiniteGraph) -> FiniteGraph:
    """Vertices are the edges of ``g``; two are adjacent iff they share an endpoint.

    Vertex ``i`` of the result is ``g.edges()[i]``, which is also its label.
    """
    if not g.edges():
        raise GraphError("line graph needs at least one edge")
    name = f"line:{g.name}" if g.name else "line"
    return FiniteGraph.from_networkx(nx.line_graph(g.to_networkx()), name=name)
