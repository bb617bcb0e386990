"""
Cayley graphs of finitely generated abelian groups Z^a ⊕ Z/n_1 ⊕ … ⊕ Z/n_r.

Elements are integer tuples: the first ``free_rank`` coordinates are free, the
rest are reduced modulo the matching entry of ``moduli``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import partial
from math import prod

from hyperwalk.exceptions import ParameterRangeError
from hyperwalk.graph.core import FiniteGraph, LazyGraph

logger = logging.getLogger("hyperwalk.generators.cayley")

Element = tuple[int, ...]


@dataclass(frozen=True)
class CayleySpec:
    free_rank: int
    moduli: tuple[int, ...]
    generators: tuple[Element, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ParameterRangeError(f"free rank must be nonnegative, got {self.free_rank}")
        if any(m < 2 for m in self.moduli):
            raise ParameterRangeError(f"cyclic factors need modulus >= 2, got {self.moduli}")
        if self.free_rank == 0 and not self.moduli:
            raise ParameterRangeError("the trivial group has no Cayley graph with edges")
        normalized = []
        for s in self.generators:
            if len(s) != self.rank:
                raise ParameterRangeError(f"generator {s} has {len(s)} coordinates, expected {self.rank}")
            normalized.append(self.normalize(s))
        gens = tuple(sorted(set(normalized)))
        object.__setattr__(self, "generators", gens)

        if not gens:
            raise ParameterRangeError("generating set is empty")
        if self.identity in gens:
            raise ParameterRangeError("generating set must exclude the identity")
        missing = [s for s in gens if self.inverse(s) not in gens]
        if missing:
            raise ParameterRangeError(f"generating set is not closed under inversion: {missing[0]} lacks its inverse")
        if self.finite:
            reached = self._orbit_closure()
            if len(reached) != self.group_order:
                raise ParameterRangeError(
                    f"generators reach {len(reached)} of {self.group_order} group elements"
                )
        else:
            logger.debug(f"Assuming {gens} generates Z^{self.free_rank} ⊕ {self.moduli}")

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.moduli)

    @property
    def finite(self) -> bool:
        return self.free_rank == 0

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    @property
    def group_order(self) -> int:
        return prod(self.moduli) if self.finite else 0

    def normalize(self, x: Element) -> Element:
        head = tuple(int(c) for c in x[: self.free_rank])
        tail = tuple(int(c) % m for c, m in zip(x[self.free_rank:], self.moduli))
        return head + tail

    def add(self, x: Element, y: Element) -> Element:
        return self.normalize(tuple(a + b for a, b in zip(x, y)))

    def inverse(self, x: Element) -> Element:
        return self.normalize(tuple(-a for a in x))

    def contains(self, x: Element) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.rank
            and all(isinstance(c, int) for c in x)
            and self.normalize(x) == x
        )

    def elements(self) -> list[Element]:
        """All elements of a finite group in lexicographic order."""
        if not self.finite:
            raise ParameterRangeError("an infinite group has no element list")
        return list(itertools.product(*(range(m) for m in self.moduli)))

    def _orbit_closure(self) -> set[Element]:
        seen = {self.identity}
        stack = [self.identity]
        while stack:
            x = stack.pop()
            for s in self.generators:
                y = self.add(x, s)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen


def _cayley_neighbors(spec: CayleySpec, x: Element) -> list[Element]:
    return [spec.add(x, s) for s in spec.generators]


def cayley_finite(spec: CayleySpec, name: str = "") -> FiniteGraph:
    elements = spec.elements()
    index = {x: i for i, x in enumerate(elements)}
    edges = []
    for x in elements:
        for s in spec.generators:
            y = spec.add(x, s)
            if index[x] < index[y]:
                edges.append((index[x], index[y]))
    return FiniteGraph.from_edges(len(elements), edges, labels=elements, name=name)


def cayley_lazy(spec: CayleySpec, name: str = "") -> LazyGraph:
    if spec.finite:
        raise ParameterRangeError("use cayley_finite for finite groups")
    return LazyGraph(
        base=spec.identity,
        neighbor_fn=partial(_cayley_neighbors, spec),
        name=name,
        membership=spec.contains,
    )


def prism(n: int) -> FiniteGraph:
    """n-gonal prism as the Cayley graph of Z/n ⊕ Z/2 with Ω = {(±1,0), (0,1)}."""
    if n < 3:
        raise ParameterRangeError(f"prism needs n >= 3, got {n}")
    spec = CayleySpec(0, (n, 2), ((1, 0), (n - 1, 0), (0, 1)))
    return cayley_finite(spec, name=f"prism:{n}")


def ladder() -> LazyGraph:
    return cayley_lazy(CayleySpec(1, (2,), ((1, 0), (-1, 0), (0, 1))), name="ladder")


def lattice() -> LazyGraph:
    return cayley_lazy(CayleySpec(2, (), ((1, 0), (-1, 0), (0, 1), (0, -1))), name="lattice")


def cylinder(n: int) -> LazyGraph:
    if n < 3:
        raise ParameterRangeError(f"cylinder needs n >= 3, got {n}")
    spec = CayleySpec(1, (n,), ((1, 0), (-1, 0), (0, 1), (0, -1)))
    return cayley_lazy(spec, name=f"cylinder:{n}")


def integers() -> LazyGraph:
    """Cayley graph of Z with Ω = {±1}, the two-way infinite path."""
    return cayley_lazy(CayleySpec(1, (), ((1,), (-1,))), name="integers")
