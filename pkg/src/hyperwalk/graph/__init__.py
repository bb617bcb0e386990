from hyperwalk.graph.core import (
    Ball,
    DistancePartition,
    FiniteGraph,
    GraphMetrics,
    LazyGraph,
    ball,
    bfs_distances,
    count_geodesics,
    distance_partition,
    girth,
    metrics,
)

__all__ = [
    "Ball",
    "DistancePartition",
    "FiniteGraph",
    "GraphMetrics",
    "LazyGraph",
    "ball",
    "bfs_distances",
    "count_geodesics",
    "distance_partition",
    "girth",
    "metrics",
]
