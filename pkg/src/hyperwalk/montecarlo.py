"""
Two-step random-walk estimator for a convolution row.

Sample ``v`` uniformly from ``Γ_i(v0)``, then ``w`` uniformly from ``Γ_j(v)``, and
record ``d(v0, w)``. Samples are drawn in fixed chunks; chunk ``c`` uses a Philox
stream keyed by the seed and jumped ``c + 1`` times, so the counts depend only on
``(seed, samples)`` and never on the number of workers.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from hyperwalk.constants import MC_CHUNK_SIZE
from hyperwalk.convolution import ConvolutionRow, require_well_defined
from hyperwalk.exceptions import InvalidUsageError, LevelOutOfRangeError
from hyperwalk.graph.core import FiniteGraph, LazyGraph, Vertex, ball

logger = logging.getLogger("hyperwalk.montecarlo")


@dataclass(frozen=True)
class McEstimate:
    i: int
    j: int
    samples: int
    seed: int
    counts: dict[int, int]

    @property
    def frequencies(self) -> dict[int, float]:
        return {k: c / self.samples for k, c in sorted(self.counts.items())}

    def deviations(self, exact: ConvolutionRow) -> dict[int, float]:
        """Binomial z-score of every observed or expected level."""
        levels = sorted(set(self.counts) | set(exact.support()))
        result = {}
        for k in levels:
            p = float(exact[k])
            freq = self.counts.get(k, 0) / self.samples
            sigma = math.sqrt(p * (1 - p) / self.samples)
            if sigma == 0:
                result[k] = 0.0 if freq == p else math.inf
            else:
                result[k] = (freq - p) / sigma
        return result


@dataclass(frozen=True)
class _Walk:
    """Flattened spheres: sphere of the ``n``-th start vertex is levels[offsets[n]:offsets[n]+sizes[n]]."""

    sizes: np.ndarray
    offsets: np.ndarray
    levels: np.ndarray
    top: int


def _finite_walk(g: FiniteGraph, v0: int, i: int, j: int) -> _Walk:
    depth = g.eccentricities[v0]
    if i > depth or j > depth:
        raise LevelOutOfRangeError(f"level {max(i, j)} exceeds eccentricity {depth} of vertex {v0}")
    dist0 = g.distances[v0]
    spheres = [[dist0[w] for w in g.sphere(v, j)] for v in g.sphere(v0, i)]
    return _flatten(spheres, i + j)


def _lazy_walk(g: LazyGraph, v0: Vertex, i: int, j: int) -> _Walk:
    b = ball(g, v0, i + j)
    spheres = []
    for v in b.levels()[i]:
        layers = b.restricted_layers(v, j)
        spheres.append([b.distances[w] for w in layers[j]])
    return _flatten(spheres, i + j)


def _flatten(spheres: list[list[int]], top: int) -> _Walk:
    sizes = np.array([len(s) for s in spheres], dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(np.int64)
    levels = np.array([k for s in spheres for k in s], dtype=np.int64)
    return _Walk(sizes=sizes, offsets=offsets, levels=levels, top=top)


def _chunk_counts(walk: _Walk, seed: int, chunk: int, size: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=seed).jumped(chunk + 1))
    start = rng.integers(0, len(walk.sizes), size=size)
    sizes = walk.sizes[start]
    step = np.minimum((rng.random(size) * sizes).astype(np.int64), sizes - 1)
    landed = walk.levels[walk.offsets[start] + step]
    return np.bincount(landed, minlength=walk.top + 1)


def mc_estimate(
    g: Union[FiniteGraph, LazyGraph],
    v0: Vertex,
    i: int,
    j: int,
    samples: int,
    seed: int,
    workers: int = 1,
) -> McEstimate:
    if samples < 1:
        raise InvalidUsageError(f"samples must be at least 1, got {samples}")
    if i < 0 or j < 0:
        raise LevelOutOfRangeError(f"levels must be nonnegative, got ({i},{j})")
    require_well_defined(g)
    walk = _finite_walk(g, v0, i, j) if isinstance(g, FiniteGraph) else _lazy_walk(g, v0, i, j)

    chunks = [(c, min(MC_CHUNK_SIZE, samples - c * MC_CHUNK_SIZE)) for c in range(math.ceil(samples / MC_CHUNK_SIZE))]
    logger.info(f"Monte Carlo R_{i}∘R_{j} from {v0!r}: {samples} samples in {len(chunks)} chunks, seed={seed}")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(pool.map(lambda c: _chunk_counts(walk, seed, *c), chunks))
    total = np.sum(parts, axis=0)
    counts = {k: int(c) for k, c in enumerate(total) if c > 0}
    return McEstimate(i=i, j=j, samples=samples, seed=seed, counts=counts)
