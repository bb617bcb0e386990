"""
Exhaustive search for connected regular graphs of small order.

Candidates are generated vertex by vertex; each vertex picks its missing
neighbors among higher vertices, and vertices whose current neighborhoods are
identical are used in id order only. Duplicates are removed by a canonical form
computed with colour refinement and individualization.
"""
from __future__ import annotations

import logging
from collections import defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Callable, Iterator, Optional

from hyperwalk.constants import SEARCH_MAX_ORDER
from hyperwalk.exceptions import ParameterRangeError, SearchBoundError
from hyperwalk.graph.core import FiniteGraph

logger = logging.getLogger("hyperwalk.generators.search")

Edges = tuple[tuple[int, int], ...]


def _refine(cells: list[list[int]], adj: list[frozenset[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition."""
    cells = [sorted(c) for c in cells]
    splitter = 0
    while splitter < len(cells):
        target = set(cells[splitter])
        refined: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: dict[int, list[int]] = defaultdict(list)
            for v in cell:
                groups[len(adj[v] & target)].append(v)
            if len(groups) > 1:
                split = True
            refined.extend(groups[count] for count in sorted(groups))
        cells = refined
        splitter = 0 if split else splitter + 1
    return cells


def _twins(cell: list[int], adj: list[frozenset[int]]) -> bool:
    first = cell[0]
    return all(adj[v] - {first} == adj[first] - {v} for v in cell[1:])


def _relabel(cells: list[list[int]], edges: list[tuple[int, int]]) -> Edges:
    position = {cell[0]: i for i, cell in enumerate(cells)}
    return tuple(sorted(tuple(sorted((position[a], position[b]))) for a, b in edges))


def canonical_form(g: FiniteGraph) -> Edges:
    """Edge list under a labeling that depends only on the isomorphism class."""
    adj = [frozenset(g.neighbors(v)) for v in g.vertices()]
    edges = g.edges()
    best: Optional[Edges] = None

    stack = [[list(g.vertices())]]
    while stack:
        cells = _refine(stack.pop(), adj)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            candidate = _relabel(cells, edges)
            if best is None or candidate < best:
                best = candidate
            continue
        cell = cells[target]
        choices = cell[:1] if _twins(cell, adj) else cell
        for v in choices:
            rest = [w for w in cell if w != v]
            stack.append(cells[:target] + [[v], rest] + cells[target + 1:])
    return best


def are_isomorphic(g: FiniteGraph, h: FiniteGraph) -> bool:
    return g.order == h.order and canonical_form(g) == canonical_form(h)


def _connected(n: int, adj: list[set[int]]) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


def _labeled_regular(n: int, k: int) -> Iterator[list[tuple[int, int]]]:
    adj: list[set[int]] = [set() for _ in range(n)]

    def extend(v: int) -> Iterator[list[tuple[int, int]]]:
        while v < n and len(adj[v]) == k:
            v += 1
        if v == n:
            if _connected(n, adj):
                yield [(a, b) for a in range(n) for b in adj[a] if a < b]
            return
        need = k - len(adj[v])
        candidates = [w for w in range(v + 1, n) if len(adj[w]) < k]
        if len(candidates) < need:
            return
        classes: dict[frozenset[int], list[int]] = defaultdict(list)
        for w in candidates:
            classes[frozenset(adj[w])].append(w)
        for chosen in combinations(candidates, need):
            picked = set(chosen)
            # within a class of interchangeable vertices only a prefix may be chosen
            if any(
                members[i + 1] in picked and members[i] not in picked
                for members in classes.values()
                for i in range(len(members) - 1)
            ):
                continue
            for w in chosen:
                adj[v].add(w)
                adj[w].add(v)
            yield from extend(v + 1)
            for w in chosen:
                adj[v].discard(w)
                adj[w].discard(v)

    yield from extend(0)


def search_graphs(
    order: int,
    degree: int,
    predicate: Optional[Callable[[FiniteGraph], bool]] = None,
    workers: int = 1,
) -> list[FiniteGraph]:
    """All connected ``degree``-regular graphs on ``order`` vertices up to isomorphism.

    Results are canonically labeled, sorted by canonical form and filtered by
    ``predicate``.
    """
    if order > SEARCH_MAX_ORDER:
        raise SearchBoundError(f"exhaustive search supports order <= {SEARCH_MAX_ORDER}, got {order}")
    if order < 1 or degree < 0:
        raise ParameterRangeError(f"invalid search bounds: order={order}, degree={degree}")
    if degree >= order and order > 1 or (order * degree) % 2:
        logger.info(f"No {degree}-regular graphs on {order} vertices")
        return []

    candidates = [
        FiniteGraph.from_edges(order, edges) for edges in _labeled_regular(order, degree)
    ]
    logger.info(f"Generated {len(candidates)} labeled candidates for order={order}, degree={degree}")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        forms = list(pool.map(canonical_form, candidates))

    unique = sorted(set(forms))
    graphs = [
        FiniteGraph.from_edges(order, form, name=f"search:{order},{degree}#{i}")
        for i, form in enumerate(unique)
    ]
    logger.info(f"{len(graphs)} isomorphism classes")
    if predicate is not None:
        graphs = [h for h in graphs if predicate(h)]
    return graphs
