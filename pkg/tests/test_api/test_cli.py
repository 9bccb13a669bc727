import json

import pytest

from src.cli import EXIT_INVARIANT, EXIT_IO, EXIT_OK, EXIT_USAGE, emit_dot, main
from src.schemas import CountsReport, EdgeReport, GraphReport, RationalValue, VertexReport

ELEVEN_A = "[0,-1,1,-10,-20]"


def _fixture(tmp_path, expected_config):
    path = tmp_path / "tables.jsonl"
    entry = {
        "label": "11.a",
        "a_invariants": [0, -1, 1, -10, -20],
        "expected_shape": "L3(25)",
        "expected_config": expected_config,
        "source": "reference-table",
    }
    path.write_text(json.dumps(entry) + "\n")
    return str(path)


def test_classify_summary(capsys):
    assert main(["classify", "[0,0,1,-1,0]"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "shape:  L1" in out
    assert "row:    L1/37.a-class" in out


def test_classify_json(capsys):
    assert main(["classify", "[1,-1,1,-6,-4]", "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["shape"] == "T4"
    assert report["config"] == ["[2,2]", "[4]", "[4]", "[2]"]
    assert len(report["vertices"]) == 4


def test_classify_short_model(capsys):
    assert main(["classify", "[0,1]", "--short", "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["shape"] == "R4(6)"
    assert report["cm"]["dK"] == -3


def test_graph_dot(capsys):
    assert main(["graph", ELEVEN_A, "--format", "dot"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("graph isogeny_class {")
    assert out.count(" -- ") == 2
    assert '[label="5"]' in out


def test_torsion(capsys):
    assert main(["torsion", "[0,0,0,0,1]", "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["torsion"] == "[6]"
    assert report["order"] == 6
    assert len(report["generators"]) == 1


def test_isogenies(capsys):
    assert main(["isogenies", "[0,0,0,-1,0]", "--ell", "2", "--json"]) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert [r["degree"] for r in reports] == [2, 2, 2]
    assert {r["source"] for r in reports} == {"two_torsion"}


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "[a,b,c,d,e]"],
        ["classify", "[0,0,0,0,0]"],
        ["classify", "[0,1,0,0,0]", "--short"],
        ["classify", "0,1"],
        ["isogenies", "[0,1]", "--ell", "23"],
    ],
)
def test_bad_input_exit_code(argv):
    assert main(argv) == EXIT_USAGE


def test_missing_command():
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == EXIT_USAGE


def test_verify_tables_pass(tmp_path, capsys):
    assert main(["verify-tables", _fixture(tmp_path, ["[5]", "[5]", "[1]"])]) == EXIT_OK
    assert "1/1 passed" in capsys.readouterr().out


def test_verify_tables_mismatch(tmp_path, capsys):
    assert main(["verify-tables", _fixture(tmp_path, ["[1]", "[1]", "[1]"]), "--json"]) == EXIT_INVARIANT
    summary = json.loads(capsys.readouterr().out)
    assert summary["failed"] == 1
    assert summary["results"][0]["status"] == "mismatch"


@pytest.mark.slow
def test_verify_tables_bundled_corpus_all_vertices(capsys):
    assert main(["verify-tables", "--all-vertices", "--json"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["total"] == summary["passed"] == 73


def test_verify_tables_missing_file(tmp_path):
    assert main(["verify-tables", str(tmp_path / "absent.jsonl")]) == EXIT_IO


def test_emit_dot():
    report = GraphReport(
        input={"a": ["0", "0", "0", "0", "1"]},
        vertices=[
            VertexReport(a=["0", "0", "0", "0", "1"], j=RationalValue(num=0), torsion="[6]"),
            VertexReport(a=["0", "0", "0", "0", "-27"], j=RationalValue(num=0), torsion="[2]"),
        ],
        edges=[EdgeReport(u=0, v=1, ell=3)],
        shape="L2(3)",
        config=["[6]", "[2]"],
        counts=[CountsReport(C=2, C_p={3: 2}, max_cyclic_degree=3)] * 2,
    )
    assert emit_dot(report) == (
        "graph isogeny_class {\n"
        '  0 [label="[6]"];\n'
        '  1 [label="[2]"];\n'
        '  0 -- 1 [label="3"];\n'
        "}\n"
    )


def test_graph_dot_single_curve(capsys):
    assert main(["graph", "[0,0,1,-1,0]", "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out == 'graph isogeny_class {\n  0 [label="[1]"];\n}\n'
