"""
Closed-form structure identities for the families whose hypergroups are known
explicitly, used as ground truth for the generic engine.

Every generator returns an exact row; coincident indices are merged and zero
coefficients dropped, so rows compare directly with engine rows.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Optional, Sequence, Union

from hyperwalk.constants import DEFAULT_LAZY_LEVEL
from hyperwalk.convolution import ConvolutionRow, ConvolutionTable, convolution_table
from hyperwalk.exceptions import ParameterRangeError
from hyperwalk.graph.core import FiniteGraph, LazyGraph, Vertex
from hyperwalk.hypergroup import classify_base_points

logger = logging.getLogger("hyperwalk.oracles")

F = Fraction
Terms = list[tuple[int, Fraction]]


def _row(terms: Terms) -> ConvolutionRow:
    merged: dict[int, Fraction] = defaultdict(Fraction)
    for k, q in terms:
        merged[k] += F(q)
    return ConvolutionRow.from_mapping(merged)


def _d(a: int, b: int) -> int:
    return int(a == b)


def _complete(n: int, i: int, j: int) -> Terms:
    # R_1∘R_1 = 1/(n-1) R_0 + (n-2)/(n-1) R_1
    return [(0, F(1, n - 1)), (1, F(n - 2, n - 1))]


def _srg(n: int, k: int, lam: int, mu: int, i: int, j: int) -> Terms:
    if i == 1 and j == 1:
        return [(0, F(1, k)), (1, F(lam, k)), (2, F(k - lam - 1, k))]
    if i == 2 and j == 2:
        r = n - k - 1
        return [(0, F(1, r)), (1, F(k - mu, r)), (2, F(n + mu - 2 * k - 2, r))]
    return [(1, F(mu, k)), (2, F(k - mu, k))]


def _tree(n: int, i: int, j: int) -> Terms:
    m = min(i, j)
    terms = [(i + j, F(n - 1, n)), (abs(i - j), F(1, n * (n - 1) ** (m - 1)))]
    terms.extend((i + j - 2 * h, F(n - 2, n * (n - 1) ** h)) for h in range(1, m))
    return terms


def _linked_triangle(i: int, j: int) -> Terms:
    m = min(i, j)
    terms = [(i + j, F(1, 2)), (abs(i - j), F(1, 2 ** (m + 1)))]
    terms.extend((abs(i - j) + 2 * h - 1, F(1, 2 ** (m + 2 - h))) for h in range(1, m + 1))
    return terms


def _prism_odd(m: int, a: int, b: int) -> Terms:
    """n = 2m + 1, 1 <= a <= b <= m + 1, m >= 2."""
    if b == m + 1:
        return [(m - a + 1, F(3 + _d(a, 1), 6)), (m - a + 2, F(3 - _d(a, 1), 6))]
    if a == 1:
        return [
            (b - 1, F(3 - _d(b, 1), 6)),
            (b, F(_d(b, m), 6)),
            (b + 1, F(3 + _d(b, 1) - _d(b, m), 6)),
        ]
    if a == b == m:
        return [(0, F(1, 4)), (1, F(1, 8)), (2, F(2 + _d(m, 2), 8)), (3, F(3 - _d(m, 2), 8))]
    if b == m:
        return [
            (m - a, F(3, 8)),
            (m - a + 1, F(1, 8)),
            (m - a + 2, F(1 + _d(a, 2), 8)),
            (m - a + 3, F(3 - _d(a, 2), 8)),
        ]
    terms = [(b - a, F(3 - _d(a, b), 8)), (b - a + 2, F(1 + _d(a, b), 8))]
    s = a + b
    if s <= m:
        terms += [(s - 2, F(1, 8)), (s, F(3, 8))]
    elif s <= m + 2:
        terms += [(m - 1, F(1, 8)), (m, F(1, 8)), (m + 1, F(1, 4))]
    else:
        terms += [(2 * m - s + 1, F(1, 8)), (2 * m - s + 3, F(3, 8))]
    return terms


def _prism_even(m: int, a: int, b: int) -> Terms:
    """n = 2m, 1 <= a <= b <= m + 1, m >= 2."""
    if b == m + 1:
        return [(m - a + 1, F(1))]
    if a == 1:
        return [
            (b - 1, F(3 - _d(b, 1) + _d(b, m), 6)),
            (b + 1, F(3 + _d(b, 1) - _d(b, m), 6)),
        ]
    if a == b == m:
        return [(0, F(1, 3)), (2, F(2, 3))]
    if b == m:
        return [(m - a, F(1, 2)), (m - a + 2, F(1, 2))]
    terms = [(b - a, F(3 - _d(a, b), 8)), (b - a + 2, F(1 + _d(a, b), 8))]
    s = a + b
    if s <= m + 1:
        terms += [(s - 2, F(1 + _d(s, m + 1), 8)), (s, F(3 - _d(s, m + 1), 8))]
    else:
        terms += [(2 * m - s, F(1, 8)), (2 * m - s + 2, F(3, 8))]
    return terms


_PRISM_3 = {
    (1, 1): [(0, F(1, 3)), (1, F(2, 9)), (2, F(4, 9))],
    (1, 2): [(1, F(2, 3)), (2, F(1, 3))],
    (2, 2): [(0, F(1, 2)), (1, F(1, 2))],
}


def _prism(n: int, i: int, j: int) -> Terms:
    a, b = min(i, j), max(i, j)
    if n == 3:
        return _PRISM_3[(a, b)]
    if n % 2:
        return _prism_odd(n // 2, a, b)
    return _prism_even(n // 2, a, b)


def _bipartite(m: int, n: int, i: int, j: int) -> Terms:
    # base on the side of size m
    if i == 1 and j == 1:
        return [(0, F(1, m)), (2, F(m - 1, m))]
    if i == 2 and j == 2:
        return [(0, F(1, m - 1)), (2, F(m - 2, m - 1))]
    return [(1, F(1))]


def _ladder(i: int, j: int) -> Terms:
    a, b = min(i, j), max(i, j)
    if a == b == 1:
        return [(0, F(1, 3)), (2, F(2, 3))]
    if a == 1:
        return [(b - 1, F(1, 2)), (b + 1, F(1, 2))]
    if a == b:
        return [(0, F(1, 4)), (2, F(1, 4)), (2 * a - 2, F(1, 8)), (2 * a, F(3, 8))]
    return [(b - a, F(3, 8)), (b - a + 2, F(1, 8)), (a + b - 2, F(1, 8)), (a + b, F(3, 8))]


# Two base-point classes each; class 0 is the filled class, class 1 the blank one.
_FIGURE_X1 = (
    {
        (1, 1): [(0, F(1, 4)), (1, F(1, 4)), (2, F(1, 2))],
        (1, 2): [(1, F(1))],
        (2, 2): [(0, F(1, 2)), (2, F(1, 2))],
    },
    {
        (1, 1): [(0, F(1, 4)), (1, F(3, 8)), (2, F(3, 8))],
        (1, 2): [(1, F(3, 4)), (2, F(1, 4))],
        (2, 2): [(0, F(1, 2)), (1, F(1, 2))],
    },
)

_LINE_PRISM3 = (
    {
        (1, 1): [(0, F(1, 4)), (1, F(3, 8)), (2, F(3, 8))],
        (1, 2): [(1, F(3, 8)), (2, F(5, 8))],
        (2, 2): [(0, F(1, 4)), (1, F(5, 8)), (2, F(1, 8))],
    },
    {
        (1, 1): [(0, F(1, 4)), (1, F(1, 4)), (2, F(1, 2))],
        (1, 2): [(1, F(1, 2)), (2, F(1, 2))],
        (2, 2): [(0, F(1, 4)), (1, F(1, 2)), (2, F(1, 4))],
    },
)


def _figure(tables: tuple[dict, ...], cls: int, i: int, j: int) -> Terms:
    return tables[cls][(min(i, j), max(i, j))]


@dataclass(frozen=True)
class _Family:
    arity: int
    levels: Optional[Callable[..., int]]
    rows: Callable[..., Terms]
    validate: Callable[..., bool]


_FAMILIES: dict[str, _Family] = {
    "complete": _Family(1, lambda n: 1, _complete, lambda n: n >= 2),
    "srg": _Family(4, lambda *p: 2, _srg, lambda n, k, lam, mu: n - k - 1 > 0 and k > 0),
    "tree": _Family(1, None, _tree, lambda n: n >= 2),
    "linked-triangle": _Family(0, None, _linked_triangle, lambda: True),
    "prism": _Family(1, lambda n: n // 2 + 1, _prism, lambda n: n >= 3),
    "bipartite": _Family(2, lambda m, n: 2, _bipartite, lambda m, n: m >= 2 and n >= 2),
    "figure-x1": _Family(1, lambda c: 2, lambda c, i, j: _figure(_FIGURE_X1, c, i, j), lambda c: c in (0, 1)),
    "line-prism3": _Family(1, lambda c: 2, lambda c, i, j: _figure(_LINE_PRISM3, c, i, j), lambda c: c in (0, 1)),
    "ladder": _Family(0, None, _ladder, lambda: True),
}

CLOSED_FORM_FAMILIES = tuple(_FAMILIES)


def family_levels(family: str, params: Sequence[int]) -> Optional[int]:
    """Largest level of a finite family, None for infinite ones."""
    spec = _lookup(family, params)
    return spec.levels(*params) if spec.levels else None


def _lookup(family: str, params: Sequence[int]) -> _Family:
    if family not in _FAMILIES:
        raise ParameterRangeError(f"no closed form for {family!r}; known: {', '.join(CLOSED_FORM_FAMILIES)}")
    spec = _FAMILIES[family]
    if len(params) != spec.arity or not spec.validate(*params):
        raise ParameterRangeError(f"invalid parameters {tuple(params)} for {family}")
    return spec


def closed_form(family: str, params: Sequence[int], i: int, j: int) -> ConvolutionRow:
    """R_i∘R_j from the family's structure identities; every row is checked for unit mass."""
    spec = _lookup(family, params)
    top = spec.levels(*params) if spec.levels else None
    if i < 0 or j < 0 or (top is not None and max(i, j) > top):
        raise ParameterRangeError(f"levels ({i},{j}) out of range for {family}{tuple(params)}")
    if i == 0:
        row = ConvolutionRow.point_mass(j)
    elif j == 0:
        row = ConvolutionRow.point_mass(i)
    else:
        row = _row(spec.rows(*params, i, j))
    if row.mass() != 1:
        raise ValueError(f"closed form {family}{tuple(params)} row ({i},{j}) has mass {row.mass()}")
    return row


@dataclass(frozen=True)
class ClosedFormTable:
    family: str
    params: tuple[int, ...]
    max_level: int

    def row(self, i: int, j: int) -> ConvolutionRow:
        return closed_form(self.family, self.params, i, j)

    def rows(self) -> dict[tuple[int, int], ConvolutionRow]:
        return {(i, j): self.row(i, j) for i in range(self.max_level + 1) for j in range(self.max_level + 1)}


def closed_form_table(family: str, params: Sequence[int], max_level: Optional[int] = None) -> ClosedFormTable:
    top = family_levels(family, params)
    if top is None:
        level = DEFAULT_LAZY_LEVEL if max_level is None else max_level
    else:
        level = top if max_level is None else min(max_level, top)
    return ClosedFormTable(family, tuple(params), level)


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    checked: int
    mismatch: Optional[tuple[int, int, ConvolutionRow, ConvolutionRow]] = None


def _compare(oracle: ClosedFormTable, table: ConvolutionTable) -> OracleVerdict:
    checked = 0
    for (i, j), expected in oracle.rows().items():
        if not table.has_row(i, j):
            return OracleVerdict(False, checked, None)
        actual = table.row(i, j)
        checked += 1
        if actual != expected:
            return OracleVerdict(False, checked, (i, j, expected, actual))
    return OracleVerdict(True, checked)


def oracle_vs_engine(
    family: str,
    params: Sequence[int],
    g: Union[FiniteGraph, LazyGraph],
    v0: Vertex,
    scope: Optional[int] = None,
) -> OracleVerdict:
    """Row-by-row comparison; the first mismatching (i, j) is reported."""
    oracle = closed_form_table(family, params, scope)
    if isinstance(g, FiniteGraph):
        table = convolution_table(g, v0)
        if scope is None and table.exact_bound != oracle.max_level:
            logger.warning(f"{family}{tuple(params)}: diameter {oracle.max_level}, engine {table.exact_bound}")
            return OracleVerdict(False, 0, None)
    else:
        table = convolution_table(g, v0, oracle.max_level)
    verdict = _compare(oracle, table)
    if verdict.mismatch is not None:
        i, j, expected, actual = verdict.mismatch
        logger.warning(f"{family}{tuple(params)} row ({i},{j}): closed form {expected}, engine {actual}")
    return verdict


@dataclass(frozen=True)
class ClassMatch:
    matched: bool
    assignment: tuple[tuple[tuple[Vertex, ...], tuple[int, ...]], ...] = ()


def match_base_point_classes(
    g: FiniteGraph, family: str, class_params: Sequence[Sequence[int]], workers: int = 1
) -> ClassMatch:
    """Perfect matching between engine base-point classes and closed-form tables."""
    classes = classify_base_points(g, workers).classes
    if len(classes) != len(class_params):
        return ClassMatch(False)
    oracles = [closed_form_table(family, params) for params in class_params]
    fits = [[_compare(oracle, cls.table).holds for oracle in oracles] for cls in classes]
    for order in permutations(range(len(oracles))):
        if all(fits[c][o] for c, o in enumerate(order)):
            assignment = tuple((classes[c].members, tuple(class_params[o])) for c, o in enumerate(order))
            return ClassMatch(True, assignment)
    return ClassMatch(False)


def closed_form_intersection(family: str, params: Sequence[int], i: int, j: int, k: int) -> int:
    """p_{i,j}^k for the regular trees and the linked-triangle graph."""
    if min(i, j, k) < 0:
        return 0
    if family == "tree":
        (n,) = params
        if k == 0:
            return 0 if i != j else (1 if i == 0 else n * (n - 1) ** (i - 1))
        if i == 0:
            return _d(j, k)
        if j == i + k:
            return (n - 1) ** i
        if j == abs(i - k):
            return (n - 1) ** (i - min(i, k))
        if (i + k - j) % 2 == 0 and 0 < (i + k - j) // 2 < min(i, k):
            h = (i + k - j) // 2
            return (n - 2) * (n - 1) ** (i - h - 1)
        return 0
    if family == "linked-triangle":
        if k == 0:
            return 0 if i != j else (1 if i == 0 else 2 ** (i + 1))
        if i == 0:
            return _d(j, k)
        if j == abs(i - k):
            return 2 ** max(i - k, 0)
        if j == i + k:
            return 2 ** i
        offset = j - abs(i - k) + 1
        if offset > 0 and offset % 2 == 0 and 1 <= offset // 2 <= min(i, k):
            return 2 ** (max(i - k, 0) + offset // 2 - 1)
        return 0
    raise ParameterRangeError(f"no closed-form intersection numbers for {family!r}")
