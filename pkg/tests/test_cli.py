import json

import pytest

from cluster_braid.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "graph, label, code",
    [("1-2:5", "H2", 0), ("1-2:3,2-3:3", "A3", 0), ("1-2:3,2-3:6", "not finite", 1), ("1-2,2-3,3-4,4-5,3-6", "E6", 0)],
)
def test_classify(capsys, graph, label, code):
    rc, out, _ = run(capsys, "classify", graph)
    assert rc == code and out.strip() == label


def test_classify_json_file(capsys, tmp_path):
    rc, out, _ = run(capsys, "classify", "1-2:4,2-3", "--format", "json")
    p = tmp_path / "g.json"
    p.write_text(json.dumps(json.loads(out)["graph"]))
    rc, out, _ = run(capsys, "classify", str(p))
    assert rc == 0 and out.strip() == "B3"


def test_ceg_dihedral(capsys):
    rc, out, _ = run(capsys, "ceg", "--type", "I2:7", "--format", "json")
    stats = json.loads(out)["stats"]
    assert rc == 0
    assert (stats["vertices"], stats["edges"], stats["polygons"]) == (9, 9, 1)


def test_ceg_a3_and_h4(capsys):
    rc, out, _ = run(capsys, "ceg", "--type", "A3")
    assert rc == 0 and "14 vertices" in out and "3 4-gons, 6 5-gons" in out
    rc, out, _ = run(capsys, "ceg", "--type", "H4", "--format", "json")
    assert json.loads(out)["stats"]["vertices"] == 280


def test_ceg_dot_parses(capsys):
    pydot = pytest.importorskip("pydot")
    rc, out, _ = run(capsys, "ceg", "--type", "B3", "--format", "dot", "--oriented", "--clusters")
    (graph,) = pydot.graph_from_dot_data(out)
    assert rc == 0 and len(graph.get_nodes()) >= 20


def test_presentation_standard_h3(capsys):
    rc, out, _ = run(capsys, "presentation", "--type", "H3", "--mutations", "")
    assert rc == 0
    assert "Br^5(b1, b2)" in out and "Br(b2, b3)" in out and "Co(b1, b3)" in out


def test_presentation_triple_heptagon(capsys):
    rc, out, _ = run(capsys, "presentation", "--type", "H3", "--vertex", "triple-heptagon", "--twists", "--format", "json")
    data = json.loads(out)
    rels = sorted(r["relation"] for r in data["presentation"]["relators"])
    assert rc == 0
    assert rels == sorted(
        ["Br^5(b1, b2)", "Br^5(b3, b1)", "Br^5(b2, b3)", "Co(b1, b2^{b3 b2})", "Br(b1, b3^{b2})"]
    )
    assert data["twists"] == ["b1", "b2", "b1^-1 b2^-1 b3 b2 b1"]


def test_presentation_dihedral(capsys):
    rc, out, _ = run(capsys, "presentation", "--type", "I2:5")
    assert rc == 0 and out.strip().count("Br^5") == 1


def test_verify_examples(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "lem-surj", "--m", "3..12")
    assert rc == 0 and out.strip().endswith("PASS")
    rc, out, _ = run(capsys, "verify", "--suite", "iota", "--folding", "H4:E8", "--format", "json")
    data = json.loads(out)
    assert rc == 0 and data["reports"][0]["stats"]["distinct_images"] == 14400


def test_verify_theta_f4_is_deterministic(capsys):
    argv = ["verify", "--suite", "theta", "--type", "F4", "--len", "8", "--samples", "100", "--seed", "42", "--format", "json"]
    rc, first, _ = run(capsys, *argv)
    rc2, second, _ = run(capsys, *argv)
    assert rc == rc2 == 0 and first == second
    data = json.loads(first)
    assert data["ok"] and data["config"]["seed"] == 42


@pytest.mark.parametrize(
    "typ, lhs, rhs, code",
    [("A2", "1 2 1", "2 1 2", 0), ("I2:5", "1 2 1 2 1", "2 1 2 1 2", 0), ("A2", "1", "2", 1)],
)
def test_wp(capsys, typ, lhs, rhs, code):
    rc, out, _ = run(capsys, "wp", "--type", typ, lhs, rhs)
    assert rc == code and out.strip() == ("equal" if code == 0 else "unequal")


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "1-2:x"],
        ["ceg", "--type", "Q7"],
        ["wp", "--type", "A2", "1", "3"],
        ["verify", "--suite", "nope"],
        ["verify", "--threads", "0"],
        ["presentation", "--type", "A3", "--mutations", "9"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_output_file(capsys, tmp_path):
    p = tmp_path / "out.json"
    rc = main(["ceg", "--type", "G2", "--format", "json", "--output", str(p)])
    assert rc == 0 and json.loads(p.read_text())["stats"]["vertices"] == 8


def test_resource_bound_exits_two(capsys):
    rc, _, err = run(capsys, "ceg", "--type", "H4", "--max-vertices", "50")
    assert rc == 2 and "exceeds" in err
