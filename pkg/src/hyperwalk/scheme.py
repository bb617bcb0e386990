"""
Distance-regularity, intersection numbers of the distance scheme and the
Bose–Mesner cross-checks.

Intersection numbers: for a pair ``(x, y)`` at distance ``k``,
``p_{i,j}^k = |{z : d(x, z) = i, d(z, y) = j}|``. They exist (do not depend on
the pair) exactly when the graph is distance-regular.

On infinite graphs everything is a certified prefix. The intersection array is
counted over every pair ``(v, w)`` with ``v`` in the radius-``L`` ball around the
base and ``d(v, w) <= L``, by direct BFS to depth ``L + 1`` in the full graph.
Intersection numbers take ``x`` to be the base and cover
``i, j <= L`` and ``k <= 2L`` inside the radius-``2L`` ball.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

import numpy as np

from hyperwalk.constants import BOSE_MESNER_MAX_ORDER, DEFAULT_LAZY_LEVEL
from hyperwalk.convolution import ConvolutionTable, convolution_table
from hyperwalk.exceptions import InvalidUsageError, NotASchemeError
from hyperwalk.generators.lazy import is_triangle_word
from hyperwalk.graph.core import FiniteGraph, LazyGraph, Vertex, bfs_layers, ball

logger = logging.getLogger("hyperwalk.scheme")

Graph = Union[FiniteGraph, LazyGraph]


@dataclass(frozen=True)
class IntersectionArray:
    """``(b_0, …, b_{s-1}; c_1, …, c_s)``."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.b[0] if self.b else 0

    def b_at(self, i: int) -> int:
        return self.b[i] if 0 <= i < len(self.b) else 0

    def c_at(self, i: int) -> int:
        return self.c[i - 1] if 1 <= i <= len(self.c) else 0

    def a_at(self, i: int) -> int:
        return self.degree - self.b_at(i) - self.c_at(i)

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.b))}; {', '.join(map(str, self.c))})"


@dataclass(frozen=True)
class RegularityWitness:
    level: int
    first: tuple[Vertex, Vertex]
    second: tuple[Vertex, Vertex]
    first_counts: tuple[int, int, int]
    second_counts: tuple[int, int, int]


@dataclass(frozen=True)
class DistanceRegularVerdict:
    distance_regular: bool
    scope: int
    array: Optional[IntersectionArray] = None
    witness: Optional[RegularityWitness] = None


@dataclass(frozen=True)
class SchemeTable:
    """Intersection numbers p_{i,j}^k for ``i, j <= max_level`` and ``k <= max_k``."""

    base: Vertex
    max_level: int
    max_k: int
    p: Mapping[tuple[int, int, int], int]
    finite: bool

    def __call__(self, i: int, j: int, k: int) -> int:
        if min(i, j, k) < 0:
            return 0
        if i > self.max_level or j > self.max_level or k > self.max_k:
            raise InvalidUsageError(f"p_{{{i},{j}}}^{k} is outside the table")
        return self.p.get((i, j, k), 0)

    def valency(self, i: int) -> int:
        return self(i, i, 0)


@dataclass(frozen=True)
class IdentityFailure:
    identity: str
    indices: tuple[int, ...]
    lhs: object
    rhs: object


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    checked: Mapping[str, int]
    failures: tuple[IdentityFailure, ...] = ()


@dataclass(frozen=True)
class CrosscheckVerdict:
    holds: bool
    checked: int
    failures: tuple[str, ...] = ()
    bose_mesner: Optional[bool] = None
    normalized: Optional[bool] = None
    linearization: Optional[bool] = None


def _counts(dist: Mapping[Vertex, int], neighbors: tuple[Vertex, ...], i: int) -> tuple[int, int, int]:
    """(c_i, a_i, b_i) for a vertex at distance ``i`` from the source of ``dist``."""
    seen = Counter(dist[u] - i for u in neighbors)
    return seen[-1], seen[0], seen[1]


def check_distance_regular(g: Graph, max_level: Optional[int] = None) -> DistanceRegularVerdict:
    """Count (c_i, a_i, b_i) over every pair in scope; the smallest (i, pair) with a differing count is the witness."""
    if isinstance(g, FiniteGraph):
        scope = max(g.eccentricities)
        sources = list(g.vertices())
        dists = {v: dict(enumerate(g.distances[v])) for v in sources}
    else:
        scope = DEFAULT_LAZY_LEVEL if max_level is None else max_level
        # BFS runs in the full graph, so every distance up to scope + 1 is exact
        sources = sorted(ball(g, g.base, scope).vertices())
        dists = {s: bfs_layers(g.neighbors, s, scope + 1)[0] for s in sources}

    per_level: dict[int, list[tuple[tuple[int, int, int], tuple[Vertex, Vertex]]]] = defaultdict(list)
    for v in sources:
        dist = dists[v]
        for w, d in sorted(dist.items(), key=lambda item: (item[1], item[0])):
            if d > scope:
                continue
            per_level[d].append((_counts(dist, g.neighbors(w), d), (v, w)))

    for i in range(scope + 1):
        entries = sorted(per_level[i], key=lambda e: e[1])
        first_counts, first_pair = entries[0]
        for counts, pair in entries[1:]:
            if counts != first_counts:
                witness = RegularityWitness(i, first_pair, pair, first_counts, counts)
                logger.info(f"Not distance-regular: {first_pair} vs {pair} at distance {i}")
                return DistanceRegularVerdict(False, scope, witness=witness)

    def level(i: int) -> tuple[int, int, int]:
        return per_level[i][0][0]

    b = tuple(level(i)[2] for i in range(scope))
    c = tuple(level(i)[0] for i in range(1, scope + 1))
    return DistanceRegularVerdict(True, scope, array=IntersectionArray(b, c))


def intersection_numbers(g: Graph, v0: Vertex, scope: Optional[int] = None) -> SchemeTable:
    """p_{i,j}^k with a constancy check; raises NotASchemeError with two disagreeing pairs."""
    if isinstance(g, FiniteGraph):
        return _finite_intersection_numbers(g, v0)
    level = DEFAULT_LAZY_LEVEL if scope is None else scope
    return _lazy_intersection_numbers(g, v0, level)


def _finite_intersection_numbers(g: FiniteGraph, v0: int) -> SchemeTable:
    dist = g.distances
    diameter = max(g.eccentricities)
    table: dict[tuple[int, int, int], int] = {}
    owner: dict[tuple[int, int, int], tuple[int, int]] = {}
    for x in g.vertices():
        for y in g.vertices():
            k = dist[x][y]
            counts = Counter((dist[x][z], dist[z][y]) for z in g.vertices())
            for i in range(diameter + 1):
                for j in range(diameter + 1):
                    key = (i, j, k)
                    value = counts.get((i, j), 0)
                    if key not in table:
                        table[key] = value
                        owner[key] = (x, y)
                    elif table[key] != value:
                        raise NotASchemeError(
                            f"p_{{{i},{j}}}^{k} is {table[key]} for {owner[key]} but {value} for {(x, y)}",
                            (owner[key], (x, y)),
                        )
    p = {key: value for key, value in table.items() if value}
    return SchemeTable(v0, diameter, diameter, p, finite=True)


def _lazy_intersection_numbers(g: LazyGraph, v0: Vertex, level: int) -> SchemeTable:
    b = ball(g, v0, 2 * level)
    levels = b.levels()
    # (i, j) -> y -> |{z in Γ_i(v0) : d(z, y) = j}|
    hits: dict[tuple[int, int], Counter] = defaultdict(Counter)
    for i in range(level + 1):
        for z in levels[i]:
            for j, layer in enumerate(b.restricted_layers(z, level)):
                hits[(i, j)].update(layer)
    p: dict[tuple[int, int, int], int] = {}
    for (i, j), counter in hits.items():
        for k in range(2 * level + 1):
            values = {counter.get(y, 0) for y in levels[k]}
            if len(values) > 1:
                low = min(levels[k], key=lambda y: counter.get(y, 0))
                high = max(levels[k], key=lambda y: counter.get(y, 0))
                raise NotASchemeError(
                    f"p_{{{i},{j}}}^{k} differs between pairs {(v0, low)} and {(v0, high)}",
                    ((v0, low), (v0, high)),
                )
            value = values.pop()
            if value:
                p[(i, j, k)] = value
    return SchemeTable(v0, level, 2 * level, p, finite=False)


def verify_scheme_identities(t: SchemeTable) -> IdentityVerdict:
    """Identities (a)–(f) of the distance scheme, exactly, on every index tuple in scope.

    (a) p_{0,j}^k = δ_{j,k}          (b) p_{i,j}^0 = δ_{i,j} p_{j,j}^0
    (c) p_{i,j}^k = p_{j,i}^k        (d) Σ_j p_{i,j}^k = p_{i,i}^0
    (e) Σ_l p_{i,j}^l p_{l,k}^m = Σ_l p_{j,k}^l p_{i,l}^m
    (f) p_{i,j}^k p_{k,k}^0 = p_{i,k}^j p_{j,j}^0
    """
    L, K = t.max_level, t.max_k
    failures: list[IdentityFailure] = []
    checked: Counter = Counter()

    def record(name: str, indices: tuple[int, ...], lhs, rhs) -> None:
        checked[name] += 1
        if lhs != rhs:
            failures.append(IdentityFailure(name, indices, lhs, rhs))

    for j in range(L + 1):
        for k in range(K + 1):
            record("a", (j, k), t(0, j, k), int(j == k))
    for i in range(L + 1):
        for j in range(L + 1):
            record("b", (i, j), t(i, j, 0), t(j, j, 0) if i == j else 0)
            for k in range(K + 1):
                record("c", (i, j, k), t(i, j, k), t(j, i, k))
    for i in range(L + 1):
        for k in range(K + 1):
            if t.finite or i + k <= L:
                record("d", (i, k), sum(t(i, j, k) for j in range(L + 1)), t(i, i, 0))
    for i in range(L + 1):
        for j in range(L + 1):
            for k in range(L + 1):
                record("f", (i, j, k), t(i, j, k) * t(k, k, 0), t(i, k, j) * t(j, j, 0))
                if not t.finite and (i + j > L or j + k > L):
                    continue
                for m in range(K + 1):
                    lhs = sum(t(i, j, l) * t(l, k, m) for l in range(L + 1))
                    rhs = sum(t(j, k, l) * t(i, l, m) for l in range(L + 1))
                    record("e", (i, j, k, m), lhs, rhs)
    return IdentityVerdict(not failures, dict(checked), tuple(failures))


def _distance_matrices(g: FiniteGraph) -> list[np.ndarray]:
    dist = np.array(g.distances, dtype=np.int64)
    return [(dist == i).astype(np.int64) for i in range(int(dist.max()) + 1)]


def drg_coefficient_crosscheck(
    g: Graph,
    v0: Vertex,
    scope: Optional[int] = None,
    table: Optional[ConvolutionTable] = None,
) -> CrosscheckVerdict:
    """Compare P_{i,j}^k with p_{j,k}^i / p_{j,j}^0 and, on small finite graphs, the Bose–Mesner products."""
    finite = isinstance(g, FiniteGraph)
    scheme = intersection_numbers(g, v0, scope)
    L = scheme.max_level
    if table is None:
        table = convolution_table(g, v0, None if finite else L)
    failures: list[str] = []
    checked = 0
    for i in range(L + 1):
        for j in range(L + 1):
            row = table.row(i, j)
            for k in range(scheme.max_k + 1):
                if k <= L:
                    expected = Fraction(scheme(j, k, i), scheme.valency(j))
                else:
                    # p_{j,k}^i p_{i,i}^0 = p_{j,i}^k p_{k,k}^0, with p_{k,k}^0 = |Γ_k(v0)|
                    expected = Fraction(
                        scheme(j, i, k) * table.level_sizes[k], scheme.valency(i) * scheme.valency(j)
                    )
                checked += 1
                if row[k] != expected:
                    failures.append(f"P_{{{i},{j}}}^{k} = {row[k]} but p_{{{j},{k}}}^{i}/p_{{{j},{j}}}^0 = {expected}")

    bose_mesner = normalized = linearization = None
    if finite and g.order <= BOSE_MESNER_MAX_ORDER:
        bose_mesner, normalized, linearization = _bose_mesner_checks(g, scheme, failures)
    holds = not failures
    if not holds:
        logger.warning(f"Cross-check found {len(failures)} mismatch(es); first: {failures[0]}")
    return CrosscheckVerdict(holds, checked, tuple(failures), bose_mesner, normalized, linearization)


def _bose_mesner_checks(g: FiniteGraph, scheme: SchemeTable, failures: list[str]) -> tuple[bool, bool, bool]:
    A = _distance_matrices(g)
    D = len(A) - 1
    ok_products = ok_normalized = ok_linear = True

    for i in range(D + 1):
        for j in range(D + 1):
            expected = sum(scheme(i, j, k) * A[k] for k in range(D + 1))
            if not np.array_equal(A[i] @ A[j], expected):
                ok_products = False
                failures.append(f"A^({i})A^({j}) differs from Σ_k p_{{{i},{j}}}^k A^(k)")

    C = [A[i].astype(object) * Fraction(1, scheme.valency(i)) for i in range(D + 1)]
    for i in range(D + 1):
        for j in range(D + 1):
            expected = sum(C[k] * Fraction(scheme(j, k, i), scheme.valency(j)) for k in range(D + 1))
            if not np.array_equal(C[i].dot(C[j]), expected):
                ok_normalized = False
                failures.append(f"C^({i})C^({j}) differs from Σ_k (p_{{{j},{k}}}^{i}/p_{{{j},{j}}}^0) C^(k)")

    array = check_distance_regular(g).array
    if array is None:
        failures.append("linearization needs an intersection array")
        return ok_products, ok_normalized, False
    for i in range(D + 1 if D >= 1 else 0):
        expected = array.a_at(i) * A[i]
        if i >= 1:
            expected = expected + array.b_at(i - 1) * A[i - 1]
        if i + 1 <= D:
            expected = expected + array.c_at(i + 1) * A[i + 1]
        if not np.array_equal(A[i] @ A[1], expected):
            ok_linear = False
            failures.append(f"A^({i})A^(1) differs from the three-term recurrence")
    return ok_products, ok_normalized, ok_linear


def srg_parameters(g: FiniteGraph) -> Optional[tuple[int, int, int, int]]:
    """(n, k, λ, μ) for a distance-regular graph of diameter two, else None."""
    if max(g.eccentricities) != 2:
        return None
    verdict = check_distance_regular(g)
    if not verdict.distance_regular:
        return None
    array = verdict.array
    return g.order, array.degree, array.a_at(1), array.c_at(2)


def word_distance(v: str, w: str) -> int:
    """Distance between two linked-triangle words.

    With ``k`` the first position (1-based) where the words differ, the distance
    is ``len(v) + len(w) - 2k + 1``; if one word is a prefix of the other it is
    the length difference.
    """
    for word in (v, w):
        if not is_triangle_word(word):
            raise InvalidUsageError(f"not a linked-triangle word: {word!r}")
    for k, (x, y) in enumerate(zip(v, w), start=1):
        if x != y:
            return len(v) + len(w) - 2 * k + 1
    return abs(len(v) - len(w))
