import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "hyperwalk.cli", *args],
        capture_output=True
    )


def test_help_shows_usage():
    result = run_cli("--help")
    assert result.returncode == 0
    assert "random walks" in result.stdout.decode()


def test_analyze_prints_rational_table():
    result = run_cli("analyze", "--graph", "prism:3", "--base", "0")
    assert result.returncode == 0
    assert "1/3 R_0 + 2/9 R_1 + 4/9 R_2" in result.stdout.decode()


def test_analyze_json_for_infinite_graph():
    result = run_cli("analyze", "--graph", "ladder", "--base", "0,0", "--max-level", "3", "--format", "json")
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert list(report)[:4] == ["base", "max_level", "exact", "rows"]
    assert report["base"] == [0, 0]
    assert report["max_level"] == 3
    assert report["exact"] is True
    assert report["rows"]["0,1"] == [[1, "1/1"]]
    assert report["finite"] is False


def test_analyze_refuses_graph_that_is_not_self_centered():
    result = run_cli("analyze", "--graph", "path:3")
    assert result.returncode == 2
    assert "Refused" in result.stderr.decode()


def test_check_classifies_base_points():
    result = run_cli("check", "--graph", "lineprism3", "--all-basepoints", "--format", "json")
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert report["productive"] is True
    assert len(report["classes"]) == 2


def test_check_base_all_is_all_basepoints():
    result = run_cli("check", "--graph", "lineprism3", "--base", "all")
    assert result.returncode == 0
    assert "Base-point classes: 2" in result.stdout.decode()


def test_check_rejects_base_with_all_basepoints():
    result = run_cli("check", "--graph", "petersen", "--base", "1", "--all-basepoints")
    assert result.returncode == 3


def test_check_reports_lattice_failure():
    result = run_cli("check", "--graph", "lattice", "--max-level", "3")
    assert result.returncode == 0
    output = result.stdout.decode()
    assert "not productive" in output
    assert "Failed associativity at (1, 1, 2)" in output


def test_drg_prints_intersection_array():
    result = run_cli("drg", "--graph", "tree:3", "--max-level", "5")
    assert result.returncode == 0
    assert "(3, 2, 2, 2, 2; 1, 1, 1, 1, 1)" in result.stdout.decode()


def test_drg_cube_prism():
    result = run_cli("drg", "--graph", "prism:4")
    assert result.returncode == 0
    assert "Distance-regular up to distance 3" in result.stdout.decode()


def test_drg_reports_witness():
    result = run_cli("drg", "--graph", "bipartite:2,3")
    assert result.returncode == 0
    assert "Not distance-regular" in result.stdout.decode()


def test_mc_rejects_zero_samples():
    result = run_cli("mc", "--graph", "prism:3", "--i", "1", "--j", "1", "--samples", "0")
    assert result.returncode == 3


def test_mc_json_is_reproducible():
    args = ("mc", "--graph", "petersen", "--i", "1", "--j", "2", "--samples", "5000", "--seed", "3", "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args, "--workers", "2")
    assert first.returncode == 0
    assert json.loads(first.stdout)["frequencies"] == json.loads(second.stdout)["frequencies"]


def test_unknown_family_lists_valid_specs():
    result = run_cli("analyze", "--graph", "moebius:5")
    assert result.returncode == 3
    assert "valid specs" in result.stderr.decode()


def test_missing_graph_option_is_usage_error():
    result = run_cli("analyze")
    assert result.returncode == 3


def test_search_rejects_large_order():
    result = run_cli("search", "--order", "11", "--degree", "3")
    assert result.returncode == 3


def test_search_productive_cubic_graphs():
    result = run_cli("search", "--order", "6", "--degree", "3", "--productive", "--format", "json")
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert report["filter"] == "productive"
    assert len(report["graphs"]) == 2


def test_search_flags_are_exclusive():
    result = run_cli("search", "--order", "6", "--degree", "3", "--productive", "--mixed")
    assert result.returncode == 3
