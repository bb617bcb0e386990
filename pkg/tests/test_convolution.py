from fractions import Fraction

import networkx as nx
import pytest

from hyperwalk.convolution import (
    ConvolutionRow,
    check_well_defined,
    convolution_coefficient,
    convolution_table,
    format_rational,
    parse_rational,
)
from hyperwalk.exceptions import InvalidUsageError, LevelOutOfRangeError, NotSelfCenteredError, ScopeError
from hyperwalk.generators import build
from hyperwalk.generators.cayley import ladder, lattice
from hyperwalk.generators.lazy import linked_triangle, tree

F = Fraction


def brute_force_row(graph: nx.Graph, v0, i: int, j: int) -> dict[int, Fraction]:
    """R_i∘R_j straight from the definition, on networkx distances."""
    dist = dict(nx.all_pairs_shortest_path_length(graph))
    start = [v for v, d in dist[v0].items() if d == i]
    row: dict[int, Fraction] = {}
    for v in start:
        landing = [w for w, d in dist[v].items() if d == j]
        for w in landing:
            k = dist[v0][w]
            row[k] = row.get(k, F(0)) + F(1, len(start) * len(landing))
    return row


def test_rational_formatting():
    assert format_rational(F(2, 9)) == "2/9"
    assert format_rational(F(1)) == "1/1"
    assert parse_rational("4/6") == F(2, 3)
    assert parse_rational("3") == F(3)


def test_row_rejects_unsorted_or_zero_entries():
    with pytest.raises(ValueError):
        ConvolutionRow(((2, F(1, 2)), (1, F(1, 2))))
    with pytest.raises(ValueError):
        ConvolutionRow(((0, F(0)),))


def test_row_access():
    row = ConvolutionRow.from_mapping({2: F(4, 9), 0: F(1, 3), 1: F(2, 9), 5: F(0)})
    assert row.support() == (0, 1, 2)
    assert row[1] == F(2, 9)
    assert row[7] == 0
    assert row.mass() == 1
    assert str(row) == "1/3 R_0 + 2/9 R_1 + 4/9 R_2"


def test_complete_graph_row():
    t = convolution_table(build("complete:4"), 0)
    assert t.row(1, 1).as_dict() == {0: F(1, 3), 1: F(2, 3)}
    assert t.row(0, 1).as_dict() == {1: F(1)}


def test_triangular_prism_row():
    t = convolution_table(build("prism:3"), 0)
    assert t.row(1, 1).as_dict() == {0: F(1, 3), 1: F(2, 9), 2: F(4, 9)}


@pytest.mark.parametrize("spec", ["petersen", "prism:5", "prism:6", "lineprism3", "cycle:7"])
def test_table_matches_brute_force(spec):
    g = build(spec)
    graph = g.to_networkx()
    for v0 in (0, g.order - 1):
        t = convolution_table(g, v0)
        for i in range(t.exact_bound + 1):
            for j in range(t.exact_bound + 1):
                assert t.row(i, j).as_dict() == brute_force_row(graph, v0, i, j)


def test_every_finite_row_has_unit_mass():
    t = convolution_table(build("platonic:20"), 3)
    assert all(row.mass() == 1 for row in t.rows.values())


def test_table_requires_self_centered_graph():
    with pytest.raises(NotSelfCenteredError) as excinfo:
        convolution_table(build("path:3"), 0)
    assert excinfo.value.witness == 1


def test_well_definedness_verdicts():
    assert check_well_defined(build("cycle:5")).well_defined
    assert check_well_defined(tree(3)).well_defined
    assert check_well_defined(build("bipartite:2,3")).well_defined
    verdict = check_well_defined(build("path:4"))
    assert not verdict.well_defined
    assert verdict.witness == 1
    assert "not self-centered" in verdict.detail


def test_finite_level_out_of_range():
    with pytest.raises(LevelOutOfRangeError):
        convolution_table(build("petersen"), 0, max_level=3)


def test_finite_max_level_limits_reported_pairs():
    t = convolution_table(build("prism:6"), 0, max_level=2)
    assert t.exact_bound == 4
    assert t.reported_pairs()[-1] == (2, 2)
    assert t.has_row(4, 4)


def test_lazy_table_needs_level():
    with pytest.raises(InvalidUsageError):
        convolution_table(tree(3), "")


def test_lazy_table_rejects_small_radius():
    with pytest.raises(InvalidUsageError, match="exactness bound"):
        convolution_table(tree(3), "", max_level=3, radius=5)


def test_tree_rows():
    t = convolution_table(tree(2), "", max_level=2)
    assert t.row(1, 2).as_dict() == {1: F(1, 2), 3: F(1, 2)}
    t3 = convolution_table(tree(3), "", max_level=2)
    assert t3.row(1, 1).as_dict() == {0: F(1, 3), 2: F(2, 3)}


def test_linked_triangle_row():
    t = convolution_table(linked_triangle(), "a", max_level=2)
    assert t.row(1, 1).as_dict() == {0: F(1, 4), 1: F(1, 4), 2: F(1, 2)}


def test_truncated_table_holds_rows_up_to_twice_the_level():
    t = convolution_table(ladder(), (0, 0), max_level=2)
    assert t.exact_bound == 4
    assert t.has_row(1, 3)
    assert not t.has_row(3, 2)
    with pytest.raises(ScopeError):
        t.row(3, 2)


@pytest.mark.parametrize("level", range(5))
@pytest.mark.parametrize(
    "g", [tree(3), linked_triangle(), ladder(), lattice()], ids=lambda g: g.name
)
def test_larger_ball_does_not_change_truncated_rows(g, level):
    small = convolution_table(g, g.base, max_level=level)
    large = convolution_table(g, g.base, max_level=level, radius=2 * level + 3)
    assert small.same_rows(large)
    assert small.level_sizes == large.level_sizes


def test_truncated_rows_agree_across_levels():
    low = convolution_table(tree(4), "", max_level=2)
    high = convolution_table(tree(4), "", max_level=3)
    for (i, j), row in low.rows.items():
        assert high.row(i, j) == row


def test_tables_are_deterministic_across_workers():
    g = build("platonic:12")
    assert convolution_table(g, 0).same_rows(convolution_table(g, 0, workers=4))
    assert convolution_table(ladder(), (0, 0), 3).same_rows(convolution_table(ladder(), (0, 0), 3, workers=3))


def test_single_coefficient():
    assert convolution_coefficient(build("prism:3"), 0, 1, 1, 1) == F(2, 9)
    assert convolution_coefficient(tree(3), "", 2, 2, 2) == F(1, 6)
    assert convolution_coefficient(build("petersen"), 0, 2, 2, 0) == F(1, 6)


def test_single_coefficient_rejects_negative_levels():
    with pytest.raises(LevelOutOfRangeError):
        convolution_coefficient(build("petersen"), 0, -1, 1, 0)
