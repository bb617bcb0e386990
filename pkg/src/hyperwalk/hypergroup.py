"""
Hypergroup productivity of (graph, base point) pairs.

A pair is productive when its convolution table passes the row audit (unit
mass, support bound, R_0 support criterion) and is commutative and associative.
Verdicts on infinite graphs are certificates up to the table's level: every
triple ``(h, i, j)`` with ``h + i + j <= 2L`` is checked exactly.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional, Union

from hyperwalk.constants import DEFAULT_LAZY_LEVEL
from hyperwalk.convolution import ConvolutionRow, ConvolutionTable, check_well_defined, convolution_table, require_well_defined
from hyperwalk.exceptions import ScopeError
from hyperwalk.graph.core import FiniteGraph, LazyGraph, Vertex

logger = logging.getLogger("hyperwalk.hypergroup")

Graph = Union[FiniteGraph, LazyGraph]
Triple = tuple[int, int, int]


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple
    lhs: Optional[ConvolutionRow] = None
    rhs: Optional[ConvolutionRow] = None
    detail: str = ""


@dataclass(frozen=True)
class AxiomVerdict:
    holds: bool
    scope: int
    failures: tuple[Failure, ...] = ()
    conditional: bool = False
    checked: int = 0


@dataclass(frozen=True)
class ProductivityVerdict:
    productive: bool
    scope: int
    finite: bool
    failures: tuple[Failure, ...] = ()
    table: Optional[ConvolutionTable] = None

    @property
    def summary(self) -> str:
        if self.failures and self.failures[0].axiom == "well-definedness":
            return f"not productive: {self.failures[0].detail}"
        if not self.productive:
            return f"not productive: {self.failures[0].axiom} fails at {list(self.failures[0].witness)}"
        if self.finite:
            return "productive"
        return f"productive up to level {self.scope}"


@dataclass(frozen=True)
class BasePointClass:
    members: tuple[Vertex, ...]
    table: ConvolutionTable


@dataclass(frozen=True)
class BasePointClassification:
    classes: tuple[BasePointClass, ...]

    def class_of(self, v: Vertex) -> int:
        return next(n for n, cls in enumerate(self.classes) if v in cls.members)


def combine(terms: Iterable[tuple[Fraction, ConvolutionRow]]) -> ConvolutionRow:
    """Linear combination Σ c · row as a canonical row."""
    acc: dict[int, Fraction] = defaultdict(Fraction)
    for c, row in terms:
        for k, q in row:
            acc[k] += c * q
    return ConvolutionRow.from_mapping(acc)


def triple_products(t: ConvolutionTable, h: int, i: int, j: int) -> tuple[ConvolutionRow, ConvolutionRow]:
    """Both bracketings: ((R_h∘R_i)∘R_j, R_h∘(R_i∘R_j))."""
    lhs = combine((q, t.row(l, j)) for l, q in t.row(h, i))
    rhs = combine((q, t.row(h, l)) for l, q in t.row(i, j))
    return lhs, rhs


def audit_rows(t: ConvolutionTable) -> tuple[Failure, ...]:
    """Unit mass, support bound and R_0 criterion on every row, first failure per axiom."""
    found: dict[str, Failure] = {}
    for (i, j), row in sorted(t.rows.items()):
        if "unit-mass" not in found and row.mass() != 1:
            found["unit-mass"] = Failure("unit-mass", (i, j), lhs=row, detail=f"mass {row.mass()}")
        support = row.support()
        if "support-bound" not in found and support and (support[0] < abs(i - j) or support[-1] > i + j):
            found["support-bound"] = Failure("support-bound", (i, j), lhs=row, detail=f"support {list(support)}")
        if "support-criterion" not in found and (row[0] > 0) != (i == j):
            found["support-criterion"] = Failure(
                "support-criterion", (i, j), lhs=row, detail=f"P^0 = {row[0]} for (i, j) = ({i}, {j})"
            )
    return tuple(found[axiom] for axiom in ("unit-mass", "support-bound", "support-criterion") if axiom in found)


def _pair_scope(t: ConvolutionTable) -> list[tuple[int, int]]:
    if t.finite:
        return [(i, j) for i in range(t.exact_bound + 1) for j in range(i + 1, t.exact_bound + 1)]
    return [(i, j) for i in range(t.exact_bound + 1) for j in range(i + 1, t.exact_bound - i + 1)]


def check_commutativity(t: ConvolutionTable) -> AxiomVerdict:
    pairs = _pair_scope(t)
    for i, j in pairs:
        if t.row(i, j) != t.row(j, i):
            logger.debug(f"Commutativity fails at ({i},{j})")
            failure = Failure("commutativity", (i, j), lhs=t.row(i, j), rhs=t.row(j, i))
            return AxiomVerdict(False, t.exact_bound, (failure,), checked=len(pairs))
    return AxiomVerdict(True, t.exact_bound, checked=len(pairs))


def _triples(t: ConvolutionTable, scope: Optional[int], first: Optional[int] = None) -> tuple[int, list[Triple]]:
    if t.finite:
        bound = t.exact_bound if scope is None else scope
        if bound > t.exact_bound:
            raise ScopeError(f"levels up to {bound} requested but the eccentricity is {t.exact_bound}", bound)
        hs = range(bound + 1) if first is None else [first]
        return bound, [(h, i, j) for h in hs for i, j in product(range(bound + 1), repeat=2)]
    bound = t.exact_bound if scope is None else scope
    if bound > t.exact_bound:
        required = (bound + 1) // 2
        raise ScopeError(
            f"triples with h+i+j <= {bound} need a table of level {required}, got level {t.max_level}", required
        )
    hs = range(bound + 1) if first is None else [first]
    return bound, [
        (h, i, j) for h in hs for i in range(bound - h + 1) for j in range(bound - h - i + 1)
    ]


def _first_failure(
    triples: list[Triple], check: Callable[[Triple], Optional[Failure]], workers: int
) -> Optional[Failure]:
    if workers <= 1:
        for triple in triples:
            failure = check(triple)
            if failure is not None:
                return failure
        return None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(check, triples))
    return next((f for f in results if f is not None), None)


def _associativity_check(t: ConvolutionTable) -> Callable[[Triple], Optional[Failure]]:
    def check(triple: Triple) -> Optional[Failure]:
        lhs, rhs = triple_products(t, *triple)
        if lhs == rhs:
            return None
        return Failure("associativity", triple, lhs=lhs, rhs=rhs)

    return check


def check_associativity_full(t: ConvolutionTable, scope: Optional[int] = None, workers: int = 1) -> AxiomVerdict:
    """Compare both bracketings for every triple in scope; the smallest failing triple is the witness.

    ``scope`` is the largest level for finite tables and the largest ``h+i+j``
    for truncated tables.
    """
    bound, triples = _triples(t, scope)
    failure = _first_failure(triples, _associativity_check(t), workers)
    if failure is not None:
        logger.debug(f"Associativity fails at {failure.witness}")
        return AxiomVerdict(False, bound, (failure,), checked=len(triples))
    return AxiomVerdict(True, bound, checked=len(triples))


def check_associativity_reduced(t: ConvolutionTable, scope: Optional[int] = None, workers: int = 1) -> AxiomVerdict:
    """Commutativity plus associativity of triples (1, i, j) only.

    Together these imply full associativity, so the verdict is marked conditional.
    """
    commutativity = check_commutativity(t)
    bound, triples = _triples(t, scope, first=1)
    if not commutativity.holds:
        return AxiomVerdict(False, bound, commutativity.failures, conditional=True, checked=commutativity.checked)
    failure = _first_failure(triples, _associativity_check(t), workers)
    failures = (failure,) if failure is not None else ()
    return AxiomVerdict(not failures, bound, failures, conditional=True, checked=len(triples))


def verdict_for_table(t: ConvolutionTable, workers: int) -> ProductivityVerdict:
    failures = list(audit_rows(t))
    failures.extend(check_commutativity(t).failures)
    failures.extend(check_associativity_full(t, workers=workers).failures)
    scope = t.exact_bound if t.finite else t.max_level
    return ProductivityVerdict(not failures, scope, t.finite, tuple(failures), t)


def productivity(g: Graph, v0: Vertex, max_level: Optional[int] = None, workers: int = 1) -> ProductivityVerdict:
    """Well-definedness, table, row audit, commutativity and associativity, in that order."""
    finite = isinstance(g, FiniteGraph)
    well_defined = check_well_defined(g)
    if not well_defined.well_defined:
        logger.warning(well_defined.detail)
        failure = Failure("well-definedness", (well_defined.witness,), detail=well_defined.detail)
        return ProductivityVerdict(False, 0, finite, (failure,))
    if not finite and max_level is None:
        max_level = DEFAULT_LAZY_LEVEL
    t = convolution_table(g, v0, max_level, workers=workers)
    verdict = verdict_for_table(t, workers)
    logger.info(f"Base {v0!r}: {verdict.summary}")
    return verdict


def classify_base_points(g: FiniteGraph, workers: int = 1) -> BasePointClassification:
    """Group vertices whose convolution tables are exactly equal."""
    require_well_defined(g)
    vertices = list(g.vertices())
    if workers <= 1:
        tables = [convolution_table(g, v) for v in vertices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(lambda v: convolution_table(g, v), vertices))
    groups: dict[tuple, list[int]] = {}
    representative: dict[tuple, ConvolutionTable] = {}
    for v, t in zip(vertices, tables):
        key = tuple(sorted(t.rows.items()))
        groups.setdefault(key, []).append(v)
        representative.setdefault(key, t)
    classes = tuple(BasePointClass(tuple(members), representative[key]) for key, members in groups.items())
    logger.info(f"{g.name or 'graph'}: {len(classes)} base-point class(es)")
    return BasePointClassification(classes)


def productive_pairs(g: FiniteGraph, workers: int = 1) -> tuple[int, ...]:
    """Base points whose pair is productive; empty when the graph is not self-centered."""
    if not check_well_defined(g).well_defined:
        return ()
    productive: list[int] = []
    for cls in classify_base_points(g, workers).classes:
        if verdict_for_table(cls.table, workers).productive:
            productive.extend(cls.members)
    return tuple(sorted(productive))
