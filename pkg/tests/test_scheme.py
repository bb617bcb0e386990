from dataclasses import replace
from fractions import Fraction

import networkx as nx
import pytest

from hyperwalk.convolution import ConvolutionRow, convolution_table
from hyperwalk.exceptions import InvalidUsageError, NotASchemeError
from hyperwalk.generators import build
from hyperwalk.generators.cayley import ladder, lattice
from hyperwalk.generators.lazy import linked_triangle, tree
from hyperwalk.graph.core import LazyGraph, ball
from hyperwalk.scheme import (
    IntersectionArray,
    check_distance_regular,
    drg_coefficient_crosscheck,
    intersection_numbers,
    srg_parameters,
    verify_scheme_identities,
    word_distance,
)


@pytest.mark.parametrize(
    "spec, b, c",
    [
        ("petersen", (3, 2), (1, 1)),
        ("platonic:8", (3, 2, 1), (1, 2, 3)),
        ("complete:4", (3,), (1,)),
        ("platonic:6", (4, 1), (1, 4)),
        ("platonic:12", (5, 2, 1), (1, 2, 5)),
        ("platonic:20", (3, 2, 1, 1, 1), (1, 1, 1, 2, 3)),
        ("cycle:6", (2, 1, 1), (1, 1, 2)),
    ],
)
def test_intersection_arrays(spec, b, c):
    verdict = check_distance_regular(build(spec))
    assert verdict.distance_regular
    assert verdict.array == IntersectionArray(b, c)


@pytest.mark.parametrize("spec", ["petersen", "platonic:20", "bipartite:3,3", "cycle:7"])
def test_intersection_arrays_match_networkx(spec):
    g = build(spec)
    b, c = nx.intersection_array(g.to_networkx())
    assert check_distance_regular(g).array == IntersectionArray(tuple(b), tuple(c))


def test_array_accessors():
    array = IntersectionArray((3, 2), (1, 1))
    assert array.degree == 3
    assert (array.c_at(2), array.a_at(2), array.b_at(2)) == (1, 2, 0)
    assert str(array) == "(3, 2; 1, 1)"


@pytest.mark.parametrize("n", range(3, 11))
def test_prism_is_distance_regular_only_for_the_cube(n):
    assert check_distance_regular(build(f"prism:{n}")).distance_regular == (n == 4)


def test_irregular_graph_has_witness():
    verdict = check_distance_regular(build("bipartite:2,3"))
    assert not verdict.distance_regular
    assert verdict.witness.level == 0
    assert verdict.witness.first_counts != verdict.witness.second_counts


def test_tree_array_prefix():
    verdict = check_distance_regular(tree(3), max_level=5)
    assert verdict.distance_regular
    assert verdict.array == IntersectionArray((3, 2, 2, 2, 2), (1, 1, 1, 1, 1))


def test_linked_triangle_array_prefix():
    verdict = check_distance_regular(linked_triangle(), max_level=3)
    assert verdict.array == IntersectionArray((4, 2, 2), (1, 1, 1))


@pytest.mark.parametrize("g", [ladder(), lattice()])
def test_ladder_and_lattice_are_not_distance_regular(g):
    verdict = check_distance_regular(g, max_level=3)
    assert not verdict.distance_regular
    assert verdict.witness.level == 2


def _line_with_chord(n: int) -> list[int]:
    extra = {7: [9], 9: [7]}.get(n, [])
    return [n - 1, n + 1, *extra]


def test_lazy_irregularity_away_from_the_base_is_found():
    # the chord 7-9 is out of reach of every pair starting next to the base
    g = LazyGraph(base=0, neighbor_fn=_line_with_chord, name="chorded-line")
    verdict = check_distance_regular(g, max_level=4)
    assert not verdict.distance_regular
    assert verdict.witness.level == 3
    assert verdict.witness.second == (4, 7)
    assert verdict.witness.second_counts == (1, 0, 2)


def test_petersen_intersection_numbers():
    t = intersection_numbers(build("petersen"), 0)
    assert [t.valency(i) for i in range(3)] == [1, 3, 6]
    assert t(1, 1, 1) == 0
    assert t(1, 1, 2) == 1
    assert t(2, 2, 0) == 6
    assert t(-1, 0, 0) == 0


def test_scheme_table_refuses_out_of_scope_entries():
    t = intersection_numbers(tree(3), "", 2)
    assert t.max_k == 4
    with pytest.raises(InvalidUsageError):
        t(3, 0, 3)


def test_non_distance_regular_graph_is_not_a_scheme():
    with pytest.raises(NotASchemeError) as excinfo:
        intersection_numbers(build("prism:3"), 0)
    assert len(excinfo.value.witness) == 2


def test_drg_and_scheme_agree():
    for spec in ["petersen", "platonic:8", "complete:5", "cycle:5", "prism:3", "bipartite:2,3", "prism:5"]:
        g = build(spec)
        regular = check_distance_regular(g).distance_regular
        try:
            intersection_numbers(g, 0)
            scheme = True
        except NotASchemeError:
            scheme = False
        assert regular == scheme, spec


@pytest.mark.parametrize(
    "spec, parameters",
    [("petersen", (10, 3, 0, 1)), ("cycle:5", (5, 2, 0, 1)), ("bipartite:3,3", (6, 3, 0, 3)), ("platonic:6", (6, 4, 2, 4))],
)
def test_srg_parameters(spec, parameters):
    assert srg_parameters(build(spec)) == parameters


def test_srg_parameters_of_other_graphs():
    assert srg_parameters(build("platonic:8")) is None
    assert srg_parameters(build("prism:3")) is None


@pytest.mark.parametrize("spec", ["petersen", "platonic:8", "platonic:12", "cycle:6", "complete:6"])
def test_scheme_identities_hold_on_finite_graphs(spec):
    verdict = verify_scheme_identities(intersection_numbers(build(spec), 0))
    assert verdict.holds
    assert set(verdict.checked) == {"a", "b", "c", "d", "e", "f"}


@pytest.mark.parametrize("g, base", [(tree(3), ""), (tree(4), ""), (linked_triangle(), "a")])
def test_scheme_identities_hold_on_truncated_tables(g, base):
    verdict = verify_scheme_identities(intersection_numbers(g, base, 3))
    assert verdict.holds
    assert verdict.checked["e"] > 0


def test_linked_triangle_valencies():
    t = intersection_numbers(linked_triangle(), "a", 4)
    assert [t.valency(i) for i in range(1, 5)] == [2 ** (i + 1) for i in range(1, 5)]


@pytest.mark.parametrize("spec", ["petersen", "platonic:8", "platonic:12", "platonic:20", "complete:5", "cycle:7"])
def test_crosscheck_on_finite_graphs(spec):
    verdict = drg_coefficient_crosscheck(build(spec), 0)
    assert verdict.holds, verdict.failures
    assert verdict.bose_mesner and verdict.normalized and verdict.linearization


def test_crosscheck_on_tree():
    verdict = drg_coefficient_crosscheck(tree(3), "", 3)
    assert verdict.holds
    assert verdict.checked == 4 * 4 * 7
    assert verdict.bose_mesner is None


def test_crosscheck_reaches_levels_beyond_truncation():
    # R_2 ∘ R_2 on tree(3) puts 2/3 of its mass on level 4
    table = convolution_table(tree(3), "", 2)
    assert table.row(2, 2)[4] == Fraction(2, 3)
    verdict = drg_coefficient_crosscheck(tree(3), "", 2, table=table)
    assert verdict.holds
    assert verdict.checked == 3 * 3 * 5


def test_crosscheck_flags_wrong_far_coefficient():
    table = convolution_table(tree(3), "", 2)
    rows = dict(table.rows)
    rows[(2, 2)] = ConvolutionRow.from_mapping({0: Fraction(1, 6), 2: Fraction(1, 3), 4: Fraction(1, 2)})
    tampered = replace(table, rows=rows)
    verdict = drg_coefficient_crosscheck(tree(3), "", 2, table=tampered)
    assert not verdict.holds
    assert any("P_{2,2}^4" in failure for failure in verdict.failures)


def test_word_distance_examples():
    assert word_distance("a", "a") == 0
    assert word_distance("ab", "ac") == 1
    assert word_distance("a", "abc") == 2
    assert word_distance("abc", "b") == 3
    assert word_distance("ab", "ba") == 3


def test_word_distance_rejects_non_words():
    with pytest.raises(InvalidUsageError):
        word_distance("aa", "b")


def test_word_distance_matches_bfs():
    g = linked_triangle()
    b = ball(g, "a", 5)
    sources = [v for v, d in b.distances.items() if d <= 2]
    for v in sources:
        dist = nx.single_source_shortest_path_length(ball(g, v, 8).to_networkx(), v)
        for w in b.vertices():
            assert word_distance(v, w) == dist[w]
