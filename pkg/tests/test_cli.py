import json

import pytest
from click.testing import CliRunner

from mlrelax.cli import main
from mlrelax.serialize import linearization_from_dict


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def test_bound_standard(runner):
    result = run(runner, "bound", "bundled:demo4", "--relaxation", "standard")
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["bound"] == "0"


def test_bound_single_edge_instance_file(runner, tmp_path):
    doc = {
        "format": 1,
        "num_vars": 2,
        "objective": [
            {"coef": -1, "vars": [1]},
            {"coef": -1, "vars": [2]},
            {"coef": 2, "vars": [1, 2]},
        ],
    }
    path = tmp_path / "edge.json"
    path.write_text(json.dumps(doc))
    result = run(runner, "bound", str(path))
    assert result.exit_code == 0
    assert json.loads(result.output)["bound"] == "-1"


def test_bound_bad_json_exits_2(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    result = run(runner, "bound", str(path))
    assert result.exit_code == 2


def test_bound_semantic_error_exits_2(runner, tmp_path):
    path = tmp_path / "square.json"
    path.write_text(
        json.dumps({"format": 1, "num_vars": 1, "objective": [{"coef": 1, "vars": [1, 1]}]})
    )
    result = run(runner, "bound", str(path))
    assert result.exit_code == 2


def test_bound_with_linearizations(runner):
    result = run(runner, "bound", "bundled:demo4", "--lin", "bundled:demo4-chain")
    assert result.exit_code == 0
    assert json.loads(result.output)["method"] == "linearizations"


def test_check_theorem_demo(runner):
    result = run(runner, "check", "theorem", "bundled:demo4")
    assert result.exit_code == 0
    assert json.loads(result.output)["holds"] is True


def test_check_fig3(runner):
    result = run(runner, "check", "fig3")
    assert result.exit_code == 0
    result = run(runner, "check", "restrictions")
    assert result.exit_code == 0


def test_check_lemma_path_bundled(runner):
    for name in ("demo4-chain", "demo4-standard", "demo4-overlap"):
        result = run(runner, "check", "lemma-path", f"bundled:{name}")
        assert result.exit_code == 0, result.output


def test_check_lemma_projection_with_edge(runner):
    result = run(runner, "check", "lemma-projection", "bundled:demo4", "--edge", "1,2,3")
    assert result.exit_code == 0


def test_check_suite_mode(runner):
    result = run(runner, "check", "lemma-projection", "--samples", "3", "--seed", "7")
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["name"] == "projection-lemma-suite"


def test_separate_vertex_none(runner, tmp_path):
    point = {
        "format": 1,
        "entries": [{"vars": [v], "value": 1} for v in range(1, 5)]
        + [
            {"vars": [1, 2], "value": 1},
            {"vars": [1, 2, 3], "value": 1},
            {"vars": [2, 3, 4], "value": 1},
        ],
    }
    path = tmp_path / "vertex.json"
    path.write_text(json.dumps(point))
    result = run(runner, "separate", "bundled:demo4", str(path))
    assert result.exit_code == 0
    assert json.loads(result.output)["status"] == "none"


def test_separate_violated_exits_1(runner):
    result = run(runner, "separate", "bundled:demo4", "bundled:demo4-p1")
    assert result.exit_code == 1
    body = json.loads(result.output)
    assert body["status"] == "violated" and body["violation"] == "1/2"


def test_separate_missing_coordinate_exits_2(runner, tmp_path):
    path = tmp_path / "short.json"
    path.write_text(json.dumps({"entries": [{"vars": [1], "value": 1}]}))
    result = run(runner, "separate", "bundled:demo4", str(path))
    assert result.exit_code == 2


def test_construct_wide_flower(runner, tmp_path):
    dot_path = tmp_path / "out.dot"
    result = run(
        runner,
        "construct",
        "bundled:wide15",
        "--center", "1,2,3,4,5,6,7,8,9,10",
        "--neighbor", "1,2,3",
        "--neighbor", "4,5,6,11,12",
        "--neighbor", "7,8,13",
        "--neighbor", "9,10,14,15",
        "--dot", str(dot_path),
    )
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    nodes = [tuple(n) for n in body["linearization"]["nodes"]]
    assert tuple(range(1, 7)) in nodes and tuple(range(1, 9)) in nodes
    assert dot_path.read_text().startswith("digraph")
    # round-trip: the emitted document re-validates to an equal digraph
    lin, _ = linearization_from_dict(body["linearization"])
    from mlrelax.serialize import linearization_to_dict

    assert linearization_to_dict(lin) == body["linearization"]


def test_construct_redundant_exits_1(runner):
    result = run(
        runner,
        "construct",
        "bundled:star3",
        "--center", "1,2,3",
        "--neighbor", "1,2,4",
        "--neighbor", "1,2,5",
        "--neighbor", "3",
    )
    assert result.exit_code == 1
    assert json.loads(result.output)["status"] == "redundant-flower"


def test_flowers_counts(runner):
    result = run(runner, "flowers", "bundled:star4", "--count-only")
    assert result.exit_code == 0
    counts = json.loads(result.output)["counts"]
    assert counts["with_edge_neighbor"] == 12 and counts["all_singleton"] == 4


def test_flowers_listing_deterministic(runner):
    first = run(runner, "flowers", "bundled:demo4")
    second = run(runner, "flowers", "bundled:demo4")
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output


def test_check_output_deterministic(runner):
    first = run(runner, "check", "theorem", "bundled:demo4")
    second = run(runner, "check", "theorem", "bundled:demo4")
    assert first.output == second.output


def test_fixtures_listing(runner):
    result = run(runner, "fixtures")
    assert result.exit_code == 0
    assert "demo4" in result.output
    result = run(runner, "fixtures", "--name", "demo4-p1")
    assert result.exit_code == 0
    assert json.loads(result.output)["format"] == 1


def test_unknown_bundled_name_exits_2(runner):
    result = run(runner, "bound", "bundled:nope")
    assert result.exit_code == 2
