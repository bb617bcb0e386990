from hyperwalk.generators.families import (
    FamilySpec,
    build,
    build_finite,
    build_lazy,
    parse_spec,
    parse_vertex_key,
)
from hyperwalk.generators.line import line_graph
from hyperwalk.generators.search import canonical_form, search_graphs

__all__ = [
    "FamilySpec",
    "build",
    "build_finite",
    "build_lazy",
    "canonical_form",
    "line_graph",
    "parse_spec",
    "parse_vertex_key",
    "search_graphs",
]
