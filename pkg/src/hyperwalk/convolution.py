"""
Exact convolution coefficients of the random-walk construction.

For a base point ``v0`` and levels ``i, j, k``::

    P_{i,j}^k = 1/|Γ_i(v0)| · Σ_{v ∈ Γ_i(v0)} |Γ_j(v) ∩ Γ_k(v0)| / |Γ_j(v)|

i.e. the probability that a jump to a uniform vertex ``v`` of ``Γ_i(v0)`` followed
by a jump to a uniform vertex of ``Γ_j(v)`` lands in ``Γ_k(v0)``.

Finite graphs use the cached all-pairs distances and must be self-centered.
Infinite graphs are truncated: a level-``L`` table is computed inside the ball of
radius ``2L`` and holds every row ``(i, j)`` with ``i + j <= 2L``; each of those
rows is exact because the geodesics involved never leave the ball.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

from hyperwalk.exceptions import InvalidUsageError, LevelOutOfRangeError, NotSelfCenteredError, ScopeError
from hyperwalk.graph.core import Ball, FiniteGraph, LazyGraph, Vertex, ball, metrics

logger = logging.getLogger("hyperwalk.convolution")

Graph = Union[FiniteGraph, LazyGraph]


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den) if den else 1)


@dataclass(frozen=True)
class ConvolutionRow:
    """Sparse probability measure on levels: strictly increasing indices, positive weights."""

    entries: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        previous = -1
        for k, q in self.entries:
            if k <= previous:
                raise ValueError(f"row indices must be strictly increasing: {self.entries}")
            if q <= 0:
                raise ValueError(f"row coefficients must be positive: {self.entries}")
            previous = k

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Fraction]) -> "ConvolutionRow":
        return cls(tuple((k, Fraction(q)) for k, q in sorted(mapping.items()) if q != 0))

    @classmethod
    def point_mass(cls, k: int) -> "ConvolutionRow":
        return cls(((k, Fraction(1)),))

    def __getitem__(self, k: int) -> Fraction:
        for index, q in self.entries:
            if index == k:
                return q
        return Fraction(0)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.entries)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    def mass(self) -> Fraction:
        return sum((q for _, q in self.entries), Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.entries)

    def __str__(self) -> str:
        return " + ".join(f"{format_rational(q)} R_{k}" for k, q in self.entries) or "0"


@dataclass(frozen=True)
class ConvolutionTable:
    """Rows ``(i, j) -> R_i ∘ R_j`` for one base point.

    Finite tables hold every pair with ``i, j <= exact_bound`` (the eccentricity of
    the base). Truncated tables hold every pair with ``i + j <= exact_bound``.
    """

    base: Vertex
    max_level: int
    exact_bound: int
    rows: Mapping[tuple[int, int], ConvolutionRow]
    level_sizes: tuple[int, ...]
    finite: bool

    def has_row(self, i: int, j: int) -> bool:
        if i < 0 or j < 0:
            return False
        if self.finite:
            return i <= self.exact_bound and j <= self.exact_bound
        return i + j <= self.exact_bound

    def row(self, i: int, j: int) -> ConvolutionRow:
        if not self.has_row(i, j):
            raise ScopeError(f"row ({i},{j}) is outside the table (exact bound {self.exact_bound})", i + j)
        return self.rows[(i, j)]

    def covers(self, h: int, i: int, j: int) -> bool:
        """Whether both bracketings of R_h∘R_i∘R_j can be expanded exactly."""
        if self.finite:
            return max(h, i, j) <= self.exact_bound
        return min(h, i, j) >= 0 and h + i + j <= self.exact_bound

    def reported_pairs(self) -> list[tuple[int, int]]:
        """Pairs with ``i, j <= max_level``, in (i, j) order."""
        return [(i, j) for i in range(self.max_level + 1) for j in range(self.max_level + 1)]

    def same_rows(self, other: "ConvolutionTable") -> bool:
        return self.exact_bound == other.exact_bound and dict(self.rows) == dict(other.rows)


@dataclass(frozen=True)
class WellDefinedVerdict:
    well_defined: bool
    witness: Optional[Vertex] = None
    detail: str = ""


def check_well_defined(g: Graph) -> WellDefinedVerdict:
    """Infinite graphs always qualify; finite graphs iff they are self-centered."""
    if isinstance(g, LazyGraph):
        return WellDefinedVerdict(True, detail="infinite graph")
    m = metrics(g)
    if m.self_centered:
        return WellDefinedVerdict(True, detail=f"self-centered with eccentricity {m.diameter}")
    witness = next(v for v, e in enumerate(m.eccentricities) if e < m.diameter)
    return WellDefinedVerdict(
        False,
        witness=witness,
        detail=(
            f"graph is not self-centered: vertex {witness} has eccentricity "
            f"{m.eccentricities[witness]} < diameter {m.diameter}"
        ),
    )


def require_well_defined(g: Graph) -> None:
    verdict = check_well_defined(g)
    if not verdict.well_defined:
        raise NotSelfCenteredError(verdict.detail, verdict.witness)


# (i, j) -> |Γ_j(v)| -> Counter of levels d(v0, w)
_Accumulator = dict[tuple[int, int], dict[int, Counter]]


def _accumulate(acc: _Accumulator, i: int, layers: list[list[Vertex]], dist0: Mapping[Vertex, int], max_j: int) -> None:
    for j in range(min(max_j, len(layers) - 1) + 1):
        layer = layers[j]
        bucket = acc.setdefault((i, j), {}).setdefault(len(layer), Counter())
        for w in layer:
            bucket[dist0[w]] += 1


def _merge(parts: list[_Accumulator]) -> _Accumulator:
    merged: _Accumulator = {}
    for part in parts:
        for pair, by_size in part.items():
            target = merged.setdefault(pair, {})
            for size, counter in by_size.items():
                target.setdefault(size, Counter()).update(counter)
    return merged


def _rows(acc: _Accumulator, level_sizes: Mapping[int, int] | tuple[int, ...]) -> dict[tuple[int, int], ConvolutionRow]:
    rows = {}
    for (i, j), by_size in sorted(acc.items()):
        coefficients: dict[int, Fraction] = defaultdict(Fraction)
        for size, counter in by_size.items():
            for k, count in counter.items():
                coefficients[k] += Fraction(count, size)
        rows[(i, j)] = ConvolutionRow.from_mapping({k: q / level_sizes[i] for k, q in coefficients.items()})
    return rows


def _finite_layers(g: FiniteGraph, v: int) -> list[list[int]]:
    row = g.distances[v]
    layers: list[list[int]] = [[] for _ in range(max(row) + 1)]
    for w, d in enumerate(row):
        layers[d].append(w)
    return layers


def _finite_level(g: FiniteGraph, v0: int, i: int, max_j: int) -> _Accumulator:
    acc: _Accumulator = {}
    dist0 = g.distances[v0]
    for v in g.sphere(v0, i):
        _accumulate(acc, i, _finite_layers(g, v), dist0, max_j)
    return acc


def _ball_level(b: Ball, levels: list[list[Vertex]], i: int, max_j: int) -> _Accumulator:
    acc: _Accumulator = {}
    for v in levels[i]:
        _accumulate(acc, i, b.restricted_layers(v, max_j), b.distances, max_j)
    return acc


def _map_levels(fn, levels: range, workers: int) -> list[_Accumulator]:
    if workers <= 1:
        return [fn(i) for i in levels]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, levels))


def convolution_table(
    g: Graph,
    v0: Vertex,
    max_level: Optional[int] = None,
    radius: Optional[int] = None,
    workers: int = 1,
) -> ConvolutionTable:
    """Convolution table for base point ``v0``.

    Finite graphs: every row with ``i, j <= e(v0)``; ``max_level`` only limits the
    reported square and must not exceed ``e(v0)``. Infinite graphs need
    ``max_level``; ``radius`` overrides the ball radius (at least ``2 * max_level``).
    """
    if isinstance(g, FiniteGraph):
        require_well_defined(g)
        depth = g.eccentricities[v0]
        if max_level is None:
            max_level = depth
        if max_level > depth:
            raise LevelOutOfRangeError(f"level {max_level} exceeds eccentricity {depth} of vertex {v0}")
        level_sizes = tuple(len(g.sphere(v0, i)) for i in range(depth + 1))
        parts = _map_levels(lambda i: _finite_level(g, v0, i, depth), range(depth + 1), workers)
        rows = _rows(_merge(parts), level_sizes)
        logger.debug(f"Finite table for base {v0}: {len(rows)} rows, diameter {depth}")
        return ConvolutionTable(v0, max_level, depth, rows, level_sizes, finite=True)

    if max_level is None:
        raise InvalidUsageError("a convolution table on an infinite graph needs max_level")
    if max_level < 0:
        raise InvalidUsageError(f"max_level must be nonnegative, got {max_level}")
    bound = 2 * max_level
    radius = bound if radius is None else radius
    if radius < bound:
        raise InvalidUsageError(f"ball radius {radius} is below the exactness bound {bound}")
    b = ball(g, v0, radius)
    levels = b.levels()
    level_sizes = tuple(len(level) for level in levels[: bound + 1])
    parts = _map_levels(lambda i: _ball_level(b, levels, i, bound - i), range(bound + 1), workers)
    rows = _rows(_merge(parts), level_sizes)
    logger.debug(f"Truncated table for base {v0!r}: level {max_level}, ball radius {radius}, {len(b)} vertices")
    return ConvolutionTable(v0, max_level, bound, rows, level_sizes, finite=False)


def convolution_coefficient(g: Graph, v0: Vertex, i: int, j: int, k: int) -> Fraction:
    """Single coefficient P_{i,j}^k."""
    if min(i, j, k) < 0:
        raise LevelOutOfRangeError(f"levels must be nonnegative, got ({i},{j},{k})")
    if isinstance(g, FiniteGraph):
        require_well_defined(g)
        depth = g.eccentricities[v0]
        if i > depth or j > depth:
            raise LevelOutOfRangeError(f"level {max(i, j)} exceeds eccentricity {depth} of vertex {v0}")
        acc = _finite_level(g, v0, i, j)
        size_i = len(g.sphere(v0, i))
    else:
        b = ball(g, v0, i + j)
        levels = b.levels()
        acc = _ball_level(b, levels, i, j)
        size_i = len(levels[i])
    row = _rows({(i, j): acc[(i, j)]}, {i: size_i})[(i, j)]
    return row[k]
