from fractions import Fraction

import pytest

from hyperwalk.convolution import ConvolutionRow, convolution_table
from hyperwalk.exceptions import NotSelfCenteredError, ScopeError
from hyperwalk.generators import build, search_graphs
from hyperwalk.graph.core import metrics
from hyperwalk.generators.cayley import cylinder, ladder, lattice
from hyperwalk.generators.lazy import linked_triangle, tree
from hyperwalk.hypergroup import (
    audit_rows,
    check_associativity_full,
    check_associativity_reduced,
    check_commutativity,
    classify_base_points,
    combine,
    productive_pairs,
    productivity,
    triple_products,
)

F = Fraction


def test_combine_merges_rows():
    row = combine([(F(1, 2), ConvolutionRow.point_mass(1)), (F(1, 2), ConvolutionRow.from_mapping({1: F(1, 2), 3: F(1, 2)}))])
    assert row.as_dict() == {1: F(3, 4), 3: F(1, 4)}


def test_triple_products_on_complete_graph():
    t = convolution_table(build("complete:4"), 0)
    lhs, rhs = triple_products(t, 1, 1, 1)
    assert lhs == rhs
    assert lhs.mass() == 1


@pytest.mark.parametrize(
    "spec",
    ["complete:2", "complete:3", "complete:5", "complete:8", "platonic:4", "platonic:6", "platonic:8",
     "platonic:12", "platonic:20", "petersen"],
)
def test_distance_regular_graphs_are_productive_with_one_class(spec):
    g = build(spec)
    verdict = productivity(g, 0)
    assert verdict.productive
    assert verdict.failures == ()
    assert len(classify_base_points(g).classes) == 1


@pytest.mark.parametrize("n", range(3, 11))
def test_prisms_are_productive(n):
    g = build(f"prism:{n}")
    assert productivity(g, 0).productive
    assert len(classify_base_points(g).classes) == 1


def test_line_prism3_has_two_productive_classes():
    g = build("lineprism3")
    classes = classify_base_points(g).classes
    assert len(classes) == 2
    assert sorted(len(cls.members) for cls in classes) == [3, 6]
    assert productive_pairs(g) == tuple(range(9))


@pytest.mark.parametrize("m, n, count", [(2, 2, 1), (2, 3, 2), (3, 3, 1), (3, 4, 2)])
def test_complete_bipartite_classes(m, n, count):
    g = build(f"bipartite:{m},{n}")
    assert len(classify_base_points(g).classes) == count
    assert productive_pairs(g) == tuple(range(m + n))


def test_class_lookup():
    classification = classify_base_points(build("bipartite:2,3"))
    assert classification.class_of(0) == classification.class_of(1)
    assert classification.class_of(0) != classification.class_of(4)


def test_path_is_refused_with_diagnostic():
    verdict = productivity(build("path:3"), 0)
    assert not verdict.productive
    assert verdict.failures[0].axiom == "well-definedness"
    assert verdict.failures[0].witness == (1,)
    assert "not self-centered" in verdict.summary
    assert productive_pairs(build("path:3")) == ()


def test_classification_needs_self_centered_graph():
    with pytest.raises(NotSelfCenteredError):
        classify_base_points(build("path:4"))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trees_are_productive_up_to_level_four(n):
    t = convolution_table(tree(n), "", max_level=4, radius=8)
    assert audit_rows(t) == ()
    reduced = check_associativity_reduced(t)
    assert reduced.holds
    assert reduced.conditional
    assert reduced.scope == 8


def test_tree_verdict_is_scoped():
    verdict = productivity(tree(3), "")
    assert verdict.productive
    assert not verdict.finite
    assert verdict.scope == 4
    assert verdict.summary == "productive up to level 4"


def test_ladder_passes_full_and_reduced_associativity():
    t = convolution_table(ladder(), (0, 0), max_level=5)
    full = check_associativity_full(t)
    reduced = check_associativity_reduced(t)
    assert full.holds and reduced.holds
    assert full.scope == 10
    assert full.checked == sum((10 - h + 1) * (10 - h + 2) // 2 for h in range(11))


def test_linked_triangle_is_productive():
    assert productivity(linked_triangle(), "a", max_level=3).productive


def test_lattice_is_not_associative():
    t = convolution_table(lattice(), (0, 0), max_level=3)
    assert check_commutativity(t).holds
    verdict = check_associativity_full(t)
    assert not verdict.holds
    failure = verdict.failures[0]
    assert failure.witness == (1, 1, 2)
    assert failure.lhs != failure.rhs
    assert failure.lhs.mass() == failure.rhs.mass() == 1


def test_lattice_verdict_carries_witness():
    verdict = productivity(lattice(), (0, 0), max_level=3)
    assert not verdict.productive
    assert any(f.axiom == "associativity" for f in verdict.failures)
    assert "not productive" in verdict.summary


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cylinders_are_not_productive(n):
    verdict = productivity(cylinder(n), (0, 0), max_level=3)
    assert not verdict.productive
    assert verdict.failures


def test_row_audit_passes_on_finite_tables():
    assert audit_rows(convolution_table(build("prism:7"), 0)) == ()


def test_scope_beyond_table_is_an_error():
    t = convolution_table(tree(3), "", max_level=2)
    with pytest.raises(ScopeError) as excinfo:
        check_associativity_full(t, scope=6)
    assert excinfo.value.required_depth == 3


def test_finite_scope_beyond_eccentricity_is_an_error():
    with pytest.raises(ScopeError):
        check_associativity_full(convolution_table(build("petersen"), 0), scope=3)


def test_associativity_is_deterministic_across_workers():
    t = convolution_table(lattice(), (0, 0), max_level=3)
    assert check_associativity_full(t, workers=4).failures == check_associativity_full(t).failures


FINITE_SPECS = [
    "complete:5",
    "cycle:6",
    "prism:3",
    "prism:5",
    "prism:8",
    "bipartite:2,3",
    "bipartite:3,5",
    "platonic:8",
    "platonic:12",
    "petersen",
    "lineprism3",
]


def _finite_test_graphs():
    graphs = [build(spec) for spec in FINITE_SPECS]
    graphs.extend(search_graphs(7, 4))
    graphs.extend(search_graphs(8, 3))
    return [g for g in graphs if metrics(g).self_centered]


def test_reduced_and_full_associativity_agree_on_finite_graphs():
    for g in _finite_test_graphs():
        for cls in classify_base_points(g).classes:
            full = check_associativity_full(cls.table)
            reduced = check_associativity_reduced(cls.table)
            assert full.holds == reduced.holds, (g.name, cls.members)


@pytest.mark.parametrize("g, v0", [(lattice(), (0, 0)), (cylinder(4), (0, 0))], ids=["lattice", "cylinder:4"])
def test_rerun_gives_identical_failures(g, v0):
    first = productivity(g, v0, max_level=3)
    second = productivity(g, v0, max_level=3)
    assert first.failures
    assert first.failures == second.failures
    assert first.failures[0].witness == second.failures[0].witness
