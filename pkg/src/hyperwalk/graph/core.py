"""
Graph representations and BFS metrics.

Finite graphs use dense integer ids ``0..n-1``. Infinite graphs are neighbor
oracles over structured keys (words, integer tuples) with a base vertex; they
are only ever explored through finite balls.

Exactness of balls: a geodesic between ``v`` with ``d(v0, v) = i`` and ``w`` with
``d(v, w) <= j`` never leaves the ball of radius ``i + j`` around ``v0``, since
every vertex ``x`` on it has ``d(v0, x) <= d(v0, v) + d(v, x)``. So a BFS from
``v`` restricted to that ball reports every distance ``<= j`` exactly.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Mapping, Optional, Sequence, Union

import networkx as nx

from hyperwalk.exceptions import GraphError, InvalidUsageError, MalformedOracleError

logger = logging.getLogger("hyperwalk.graph")

Vertex = Hashable


@dataclass(frozen=True)
class FiniteGraph:
    """Connected simple graph on vertex ids ``0..n-1``.

    ``labels`` optionally maps ids to structured names (group elements, edges of
    an underlying graph); they are carried for reporting only.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[Any, ...]] = None
    name: str = ""

    def __post_init__(self):
        n = len(self.adjacency)
        if n == 0:
            raise GraphError("graph must have at least one vertex")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"adjacency of vertex {v} has duplicates or is unsorted: {nbrs}")
            for w in nbrs:
                if not 0 <= w < n:
                    raise GraphError(f"vertex {v} has out-of-range neighbor {w}")
                if w == v:
                    raise GraphError(f"loop at vertex {v}")
                if v not in self.adjacency[w]:
                    raise GraphError(f"asymmetric adjacency: {w} in N({v}) but {v} not in N({w})")
        if self.labels is not None and len(self.labels) != n:
            raise GraphError(f"expected {n} labels, got {len(self.labels)}")
        graph = self.to_networkx()
        if not nx.is_connected(graph):
            missing = min(set(range(n)) - nx.node_connected_component(graph, 0))
            raise GraphError(f"graph is disconnected: vertex {missing} unreachable from 0")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Optional[Sequence[Any]] = None,
        name: str = "",
    ) -> "FiniteGraph":
        """Build from an edge list, rejecting loops, repeats and out-of-range ids."""
        if n < 1:
            raise GraphError(f"order must be positive, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for edge in edges:
            a, b = int(edge[0]), int(edge[1])
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) out of range for n={n}")
            if a == b:
                raise GraphError(f"loop at vertex {a}")
            if b in adj[a]:
                raise GraphError(f"duplicate edge ({a}, {b})")
            adj[a].add(b)
            adj[b].add(a)
        return cls(
            adjacency=tuple(tuple(sorted(s)) for s in adj),
            labels=tuple(labels) if labels is not None else None,
            name=name,
        )

    @classmethod
    def from_networkx(cls, graph: nx.Graph, name: str = "") -> "FiniteGraph":
        nodes = sorted(graph.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        edges = [(index[a], index[b]) for a, b in graph.edges()]
        return cls.from_edges(len(nodes), edges, labels=nodes, name=name)

    @property
    def order(self) -> int:
        return len(self.adjacency)

    def vertices(self) -> range:
        return range(self.order)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v, nbrs in enumerate(self.adjacency) for w in nbrs if v < w]

    def label(self, v: int) -> Any:
        return self.labels[v] if self.labels is not None else v

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices())
        graph.add_edges_from(self.edges())
        return graph

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs distance matrix."""
        lengths = dict(nx.all_pairs_shortest_path_length(self.to_networkx()))
        return tuple(tuple(lengths[v][w] for w in self.vertices()) for v in self.vertices())

    @cached_property
    def eccentricities(self) -> tuple[int, ...]:
        return tuple(max(row) for row in self.distances)

    def sphere(self, v: int, i: int) -> tuple[int, ...]:
        """Γ_i(v): vertices at distance exactly ``i`` from ``v``."""
        return tuple(w for w, d in enumerate(self.distances[v]) if d == i)


@dataclass(frozen=True)
class LazyGraph:
    """Infinite locally finite graph given by a pure neighbor oracle."""

    base: Vertex
    neighbor_fn: Callable[[Vertex], Iterable[Vertex]] = field(repr=False)
    name: str = ""
    membership: Optional[Callable[[Vertex], bool]] = field(default=None, repr=False)

    def __contains__(self, v: Vertex) -> bool:
        if self.membership is None:
            return True
        try:
            return bool(self.membership(v))
        except (TypeError, ValueError):
            return False

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        result = tuple(sorted(set(self.neighbor_fn(v))))
        if not result:
            raise MalformedOracleError(f"{self.name or 'oracle'}: vertex {v!r} has degree 0")
        if v in result:
            raise MalformedOracleError(f"{self.name or 'oracle'}: loop at vertex {v!r}")
        return result

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))


Graph = Union[FiniteGraph, LazyGraph]


@dataclass(frozen=True)
class Ball:
    """Radius-R BFS neighborhood with exact distances from its center."""

    center: Vertex
    radius: int
    distances: Mapping[Vertex, int]
    adjacency: Mapping[Vertex, tuple[Vertex, ...]] = field(repr=False)

    def __contains__(self, v: Vertex) -> bool:
        return v in self.distances

    def __len__(self) -> int:
        return len(self.distances)

    def vertices(self) -> list[Vertex]:
        return list(self.distances)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self.adjacency[v]

    def levels(self) -> list[list[Vertex]]:
        layers: list[list[Vertex]] = [[] for _ in range(self.radius + 1)]
        for v, d in self.distances.items():
            layers[d].append(v)
        for layer in layers:
            layer.sort()
        while layers and not layers[-1]:
            layers.pop()
        return layers

    def restricted_layers(self, source: Vertex, depth: int) -> list[list[Vertex]]:
        """BFS layers from ``source`` using only ball vertices, up to ``depth``."""
        return bfs_layers(self.neighbors, source, depth)[1]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.distances)
        for v, nbrs in self.adjacency.items():
            graph.add_edges_from((v, w) for w in nbrs)
        return graph


@dataclass(frozen=True)
class DistancePartition:
    base: Vertex
    levels: tuple[tuple[Vertex, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


@dataclass(frozen=True)
class GraphMetrics:
    eccentricities: tuple[int, ...]
    radius: int
    diameter: int
    self_centered: bool


def bfs_layers(
    neighbors: Callable[[Vertex], Iterable[Vertex]],
    source: Vertex,
    max_depth: Optional[int] = None,
) -> tuple[dict[Vertex, int], list[list[Vertex]]]:
    dist: dict[Vertex, int] = {source: 0}
    layers: list[list[Vertex]] = [[source]]
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if max_depth is not None and d >= max_depth:
            continue
        for w in neighbors(v):
            if w not in dist:
                dist[w] = d + 1
                if len(layers) <= d + 1:
                    layers.append([])
                layers[d + 1].append(w)
                queue.append(w)
    return dist, layers


def bfs_distances(g: Graph, v: Vertex, max_depth: Optional[int] = None) -> dict[Vertex, int]:
    """Exact distances from ``v``; a lazy graph needs ``max_depth``."""
    if isinstance(g, FiniteGraph):
        row = g.distances[v]
        return {w: d for w, d in enumerate(row) if max_depth is None or d <= max_depth}
    if max_depth is None:
        raise InvalidUsageError("bfs_distances on an infinite graph needs max_depth")
    return bfs_layers(g.neighbors, v, max_depth)[0]


def metrics(g: FiniteGraph) -> GraphMetrics:
    ecc = g.eccentricities
    return GraphMetrics(
        eccentricities=ecc,
        radius=min(ecc),
        diameter=max(ecc),
        self_centered=min(ecc) == max(ecc),
    )


def ball(g: Graph, center: Vertex, radius: int) -> Ball:
    """Vertices within ``radius`` of ``center`` with exact distances and induced edges.

    Raises MalformedOracleError if the oracle is not symmetric inside the ball.
    """
    if radius < 0:
        raise InvalidUsageError(f"ball radius must be nonnegative, got {radius}")
    dist, _ = bfs_layers(g.neighbors, center, radius)
    adjacency: dict[Vertex, tuple[Vertex, ...]] = {}
    for v in dist:
        adjacency[v] = tuple(w for w in g.neighbors(v) if w in dist)
    for v, nbrs in adjacency.items():
        for w in nbrs:
            if v not in adjacency[w]:
                raise MalformedOracleError(
                    f"asymmetric oracle: {w!r} in N({v!r}) but {v!r} not in N({w!r})"
                )
    logger.debug(f"Ball around {center!r} of radius {radius}: {len(dist)} vertices")
    return Ball(center=center, radius=radius, distances=dist, adjacency=adjacency)


def distance_partition(g: Graph, v0: Vertex, max_level: Optional[int] = None) -> DistancePartition:
    if isinstance(g, FiniteGraph):
        depth = g.eccentricities[v0] if max_level is None else min(max_level, g.eccentricities[v0])
        levels = tuple(g.sphere(v0, i) for i in range(depth + 1))
        return DistancePartition(base=v0, levels=levels)
    if max_level is None:
        raise InvalidUsageError("distance_partition on an infinite graph needs max_level")
    levels = ball(g, v0, max_level).levels()
    return DistancePartition(base=v0, levels=tuple(tuple(level) for level in levels))


def count_geodesics(g: Union[Graph, Ball], v: Vertex, w: Vertex) -> int:
    """Number of shortest ``v``–``w`` paths by layered path counting."""
    if v == w:
        return 1
    paths: dict[Vertex, int] = {v: 1}
    frontier = [v]
    while frontier:
        layer: dict[Vertex, int] = {}
        for x in frontier:
            for y in g.neighbors(x):
                if y in paths:
                    continue
                layer[y] = layer.get(y, 0) + paths[x]
        if w in layer:
            return layer[w]
        paths.update(layer)
        frontier = list(layer)
    raise InvalidUsageError(f"{w!r} is not reachable from {v!r}")


def girth(g: Union[FiniteGraph, Ball]) -> Optional[int]:
    """Length of a shortest cycle, or None for a forest."""
    best: Optional[int] = None
    vertices = g.vertices()
    for source in vertices:
        dist = {source: 0}
        parent: dict[Vertex, Vertex] = {}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] >= best:
                break
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent.get(x) != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best
