import json

import pytest

from hyperwalk.exceptions import GraphError
from hyperwalk.generators import build
from hyperwalk.graph.io import load_graph, parse_edge_list, parse_graph_json


def test_parse_graph_json():
    g = parse_graph_json('{"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}')
    assert g.order == 4
    assert g.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_graph_json_rejects_duplicate_edges():
    with pytest.raises(GraphError, match="duplicate"):
        parse_graph_json('{"n": 3, "edges": [[0, 1], [1, 0], [1, 2]]}')


def test_graph_json_rejects_out_of_range_edges():
    with pytest.raises(GraphError, match="out of range"):
        parse_graph_json('{"n": 2, "edges": [[0, 5]]}')


def test_graph_json_rejects_bad_schema():
    with pytest.raises(GraphError, match="invalid graph JSON"):
        parse_graph_json('{"edges": [[0, 1]]}')


def test_parse_edge_list_with_comments():
    text = "# a triangle\n3\n0 1\n1 2  # second edge\n\n2 0\n"
    g = parse_edge_list(text)
    assert g.order == 3
    assert len(g.edges()) == 3


def test_edge_list_rejects_malformed_line():
    with pytest.raises(GraphError, match="expected 'a b'"):
        parse_edge_list("3\n0 1 2\n")


def test_edge_list_rejects_empty_text():
    with pytest.raises(GraphError):
        parse_edge_list("  \n# nothing\n")


def test_load_graph_by_suffix(tmp_path):
    petersen = build("petersen")
    json_path = tmp_path / "petersen.json"
    json_path.write_text(json.dumps({"n": petersen.order, "edges": petersen.edges()}))
    text_path = tmp_path / "petersen.txt"
    text_path.write_text("\n".join([str(petersen.order)] + [f"{a} {b}" for a, b in petersen.edges()]))

    from_json = load_graph(json_path)
    from_text = load_graph(text_path)
    assert from_json.adjacency == petersen.adjacency
    assert from_text.adjacency == petersen.adjacency
    assert from_json.name == f"file:{json_path}"


def test_load_graph_missing_file(tmp_path):
    with pytest.raises(GraphError, match="not found"):
        load_graph(tmp_path / "nope.json")


def test_file_spec_builds_graph(tmp_path):
    path = tmp_path / "k4.json"
    path.write_text('{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}')
    g = build(f"file:{path}")
    assert g.adjacency == build("complete:4").adjacency
