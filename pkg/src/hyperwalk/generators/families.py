"""
Graph family specs and their builders.

Spec micro-syntax: ``complete:5``, ``cycle:6``, ``path:3``, ``prism:6``,
``bipartite:2,3``, ``platonic:12``, ``petersen``, ``line:<spec>``, ``lineprism3``,
``file:PATH`` (finite) and ``tree:3``, ``linked-triangle``, ``ladder``,
``lattice``, ``cylinder:4`` (infinite).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

from hyperwalk.exceptions import InvalidUsageError, ParameterRangeError, UnknownFamilyError
from hyperwalk.generators import cayley, lazy, platonic
from hyperwalk.generators.line import line_graph
from hyperwalk.graph.core import FiniteGraph, LazyGraph, Vertex
from hyperwalk.graph.io import load_graph

logger = logging.getLogger("hyperwalk.generators.families")

FINITE_FAMILIES = ("complete", "cycle", "path", "prism", "bipartite", "platonic", "petersen", "line", "lineprism3", "file")
LAZY_FAMILIES = ("tree", "linked-triangle", "ladder", "lattice", "cylinder")

# (family, parameter count) pairs accepted by parse_spec
_ARITY = {
    "complete": 1,
    "cycle": 1,
    "path": 1,
    "prism": 1,
    "bipartite": 2,
    "platonic": 1,
    "petersen": 0,
    "lineprism3": 0,
    "tree": 1,
    "linked-triangle": 0,
    "ladder": 0,
    "lattice": 0,
    "cylinder": 1,
}

VALID_SPECS = (
    "complete:N",
    "cycle:N",
    "path:N",
    "prism:N",
    "bipartite:M,N",
    "platonic:{4,6,8,12,20}",
    "petersen",
    "line:SPEC",
    "lineprism3",
    "file:PATH",
    "tree:K",
    "linked-triangle",
    "ladder",
    "lattice",
    "cylinder:N",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()
    inner: Optional["FamilySpec"] = None
    path: Optional[str] = None

    @property
    def lazy(self) -> bool:
        return self.family in LAZY_FAMILIES

    def __str__(self) -> str:
        if self.family == "line":
            return f"line:{self.inner}"
        if self.family == "file":
            return f"file:{self.path}"
        if self.params:
            return f"{self.family}:{','.join(str(p) for p in self.params)}"
        return self.family


def parse_spec(text: str) -> FamilySpec:
    text = text.strip()
    family, _, rest = text.partition(":")
    if family == "file":
        if not rest:
            raise InvalidUsageError("file spec needs a path: file:PATH")
        return FamilySpec("file", path=rest)
    if family == "line":
        if not rest:
            raise InvalidUsageError("line spec needs an inner spec: line:SPEC")
        inner = parse_spec(rest)
        if inner.lazy:
            raise ParameterRangeError(f"line graphs are built from finite graphs only, got {inner}")
        return FamilySpec("line", inner=inner)
    if family not in _ARITY:
        raise UnknownFamilyError(f"unknown graph family {family!r}", VALID_SPECS)
    try:
        params = tuple(int(p) for p in rest.split(",")) if rest else ()
    except ValueError as e:
        raise InvalidUsageError(f"non-integer parameter in {text!r}") from e
    if len(params) != _ARITY[family]:
        raise InvalidUsageError(f"{family} takes {_ARITY[family]} parameter(s), got {len(params)} in {text!r}")
    return FamilySpec(family, params)


def _complete(n: int) -> FiniteGraph:
    if n < 1:
        raise ParameterRangeError(f"complete graph needs n >= 1, got {n}")
    return FiniteGraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)], name=f"complete:{n}")


def _cycle(n: int) -> FiniteGraph:
    if n < 3:
        raise ParameterRangeError(f"cycle needs n >= 3, got {n}")
    return FiniteGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle:{n}")


def _path(n: int) -> FiniteGraph:
    if n < 1:
        raise ParameterRangeError(f"path needs n >= 1, got {n}")
    return FiniteGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"path:{n}")


def _bipartite(m: int, n: int) -> FiniteGraph:
    """K_{m,n}: ids 0..m-1 on the first side, m..m+n-1 on the second."""
    if m < 1 or n < 1:
        raise ParameterRangeError(f"bipartite needs m, n >= 1, got {m},{n}")
    edges = [(a, m + b) for a in range(m) for b in range(n)]
    return FiniteGraph.from_edges(m + n, edges, name=f"bipartite:{m},{n}")


def build_finite(spec: FamilySpec) -> FiniteGraph:
    family, params = spec.family, spec.params
    if family == "complete":
        return _complete(*params)
    if family == "cycle":
        return _cycle(*params)
    if family == "path":
        return _path(*params)
    if family == "prism":
        return cayley.prism(*params)
    if family == "bipartite":
        return _bipartite(*params)
    if family == "platonic":
        return platonic.platonic(*params)
    if family == "petersen":
        return platonic.petersen()
    if family == "lineprism3":
        return line_graph(cayley.prism(3))
    if family == "line":
        return line_graph(build_finite(spec.inner))
    if family == "file":
        return load_graph(spec.path)
    raise ParameterRangeError(f"{spec} is not a finite family")


def build_lazy(spec: FamilySpec) -> LazyGraph:
    family, params = spec.family, spec.params
    if family == "tree":
        return lazy.tree(*params)
    if family == "linked-triangle":
        return lazy.linked_triangle()
    if family == "ladder":
        return cayley.ladder()
    if family == "lattice":
        return cayley.lattice()
    if family == "cylinder":
        return cayley.cylinder(*params)
    raise ParameterRangeError(f"{spec} is not an infinite family")


def build(spec: Union[FamilySpec, str]) -> Union[FiniteGraph, LazyGraph]:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    logger.debug(f"Building graph {spec}")
    return build_lazy(spec) if spec.lazy else build_finite(spec)


def parse_vertex_key(g: Union[FiniteGraph, LazyGraph], text: str) -> Vertex:
    """Turn a CLI base-point string into a vertex of ``g``.

    Finite graphs take integer ids; word graphs take the word (``root`` or an
    empty string for the tree root); lattice-like graphs take ``x,y``.
    """
    text = text.strip()
    if isinstance(g, FiniteGraph):
        try:
            v = int(text)
        except ValueError as e:
            raise InvalidUsageError(f"base point must be an integer id, got {text!r}") from e
        if not 0 <= v < g.order:
            raise InvalidUsageError(f"base point {v} out of range 0..{g.order - 1}")
        return v
    if isinstance(g.base, tuple):
        try:
            key: Vertex = tuple(int(part) for part in text.split(","))
        except ValueError as e:
            raise InvalidUsageError(f"base point must look like 'x,y', got {text!r}") from e
    else:
        key = "" if text in ("", "root") else text
    if key not in g:
        raise InvalidUsageError(f"{text!r} is not a vertex of {g.name}")
    return key
