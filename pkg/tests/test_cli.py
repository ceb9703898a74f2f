import json
import os
from pathlib import Path

import pytest

from mlab.cli import main
from mlab.initiality import VERDICT_INCONCLUSIVE, VERDICT_OK

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main([str(DATA / a) if (DATA / a).is_file() else a for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 else None), err


def test_index_of_a_forever_state(capsys):
    code, doc, _ = run(capsys, "index", "forever.coalg", "*")
    assert code == 0
    assert doc["result"] == {"state": "*", "index": "inf"}
    assert doc["schema"] == 1 and doc["command"] == ["index"]


def test_index_of_a_countdown(capsys):
    _, doc, _ = run(capsys, "index", "countdown2.coalg", "2")
    assert doc["result"]["index"] == 2


def test_unknown_state_exits_1(capsys):
    code, _, err = run(capsys, "index", "countdown2.coalg", "7")
    assert code == 1 and "UNKNOWN_ELEMENT" in err


def test_wrong_kind_exits_1(capsys):
    code, _, err = run(capsys, "measure", "enum", "two.alg", "two.alg", "two.alg")
    assert code == 1
    assert "WRONG_KIND" in err and "an algebra" in err


def test_missing_file_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "index", str(tmp_path / "nope.coalg"), "0")
    assert code == 1 and err.startswith("error: SYNTAX:")


def test_parse_error_carries_a_position(capsys, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra idsucc {\n  elements a;\n  zero a;\n  succ a->b;\n}\n")
    code, _, err = run(capsys, "dual", "coalg", str(bad))
    assert code == 1 and "UNKNOWN_ELEMENT at 4:" in err


def test_output_is_byte_identical_across_runs(capsys):
    argv = ["measure", "enum", "countdown2.coalg", "two.alg", "two.alg"]
    run(capsys, *argv)
    first = capsys.readouterr()
    main([str(DATA / a) if (DATA / a).is_file() else a for a in argv])
    a = capsys.readouterr().out
    main([str(DATA / a) if (DATA / a).is_file() else a for a in argv])
    b = capsys.readouterr().out
    assert a == b and "seconds" not in a
    assert first.err == ""


def test_provenance_digests_inputs(capsys):
    _, doc, _ = run(capsys, "conv", "countdown1.coalg", "one.alg")
    inputs = doc["provenance"]["inputs"]
    assert len(inputs) == 2 and all(len(h) == 64 for h in inputs.values())


def test_timing_only_on_request(capsys):
    code = main(["--timing", "index", str(DATA / "countdown1.coalg"), "1"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and isinstance(doc["seconds"], float)


def test_enum_bound_flag_refuses_and_restores_env(capsys, monkeypatch):
    monkeypatch.delenv("MLAB_ENUM_BOUND", raising=False)
    code, _, err = run(capsys, "--enum-bound", "3", "measure", "enum", "countdown2.coalg", "two.alg", "two.alg")
    assert code == 2 and err.startswith("refused: BoundExceeded")
    assert "MLAB_ENUM_BOUND" not in os.environ


def test_enum_bound_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MLAB_ENUM_BOUND", "3")
    code, _, _ = run(capsys, "measure", "enum", "countdown2.coalg", "two.alg", "two.alg")
    assert code == 2
    monkeypatch.setenv("MLAB_ENUM_BOUND", "1000")
    code, doc, _ = run(capsys, "measure", "enum", "countdown2.coalg", "two.alg", "two.alg", "--count-only")
    assert code == 0 and doc["result"] == {"count": 1}


def test_measure_check(capsys):
    _, doc, _ = run(capsys, "measure", "check", "forever.coalg", "two.alg", "two.alg", "phi_identity.json")
    assert doc["result"] == {"measuring": True}


def test_measure_check_reports_a_witness(capsys, tmp_path):
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps({"*": {"0": "0", "1": "0", "2": "0"}}))
    _, doc, _ = run(capsys, "measure", "check", "forever.coalg", "two.alg", "two.alg", str(phi))
    assert doc["result"]["measuring"] is False
    assert doc["result"]["witness"]["state"] == "*"


def test_measure_compose(capsys):
    _, doc, _ = run(capsys, "measure", "compose", "g.json", "f.json")
    res = doc["result"]
    assert len(res["coalgebra"]["states"]) == 6
    assert res["phi"]["(1,2)"] == {"0": "0", "1": "1", "2": "1"}


def test_measuring_file_must_be_a_measuring(capsys, tmp_path):
    for name in ("two.alg", "countdown2.coalg"):
        (tmp_path / name).write_text((DATA / name).read_text())
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "C": "countdown2.coalg", "A": "two.alg", "B": "two.alg",
        "phi": {c: {a: "0" for a in "012"} for c in "012"},
    }))
    code, _, err = run(capsys, "measure", "compose", str(bad), str(bad))
    assert code == 1 and "NOT_A_MEASURING" in err


def test_classify_into_the_naturals(capsys):
    _, doc, _ = run(capsys, "umeas", "classify", "two.alg", "N")
    res = doc["result"]
    assert res["subterminal"] == {"name": "<2>^", "kind": "bracket", "n": 2}
    assert res["nminus_detected"] is False
    assert res["partial_induction"]["total"] is False


def test_classify_a_loop_into_itself(capsys):
    _, doc, _ = run(capsys, "umeas", "classify", "loop3.alg", "loop3.alg")
    assert doc["result"]["subterminal"]["kind"] == "bracket+point"


def test_graph_with_dot_export(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    _, doc, _ = run(capsys, "umeas", "graph", "one.alg", "two.alg", "--dot", str(dot))
    assert doc["result"]["longest_path_to_terminal"] == 1
    assert dot.read_text().startswith("digraph")


def test_graph_needs_a_finite_target(capsys):
    code, _, err = run(capsys, "umeas", "graph", "one.alg", "N")
    assert code == 1 and "WRONG_KIND" in err


def test_duals(capsys):
    _, doc, _ = run(capsys, "dual", "coalg", "two.alg")
    assert doc["result"]["subterminal"]["name"] == "<2>^"
    _, doc, _ = run(capsys, "dual", "alg", "countdown1.coalg")
    assert doc["result"]["chain"] == [[0, 0], [0, 1]]
    _, doc, _ = run(capsys, "dual", "alg", "forever.coalg", "--bound", "5")
    assert doc["result"]["saturated"] is False


def test_tensor_with_homs(capsys):
    _, doc, _ = run(capsys, "tensor", "countdown1.coalg", "one.alg", "--homs-into", "two.alg")
    res = doc["result"]
    assert res["critical_pairs_joinable"] is True
    assert res["homs"]["count"] == len(res["homs"]["measurings"]) == 1


def test_posets(capsys):
    _, doc, _ = run(capsys, "poset", "sub", "countdown2.coalg")
    assert doc["result"]["items"] == [[], ["0"], ["0", "1"], ["0", "1", "2"]]
    _, doc, _ = run(capsys, "poset", "quot", "two.alg")
    assert len(doc["result"]["items"]) == 3


def test_cinitial_commands(capsys):
    _, doc, _ = run(capsys, "cinitial", "check", "one.alg", "countdown1.coalg", "--family-size", "2")
    assert doc["result"]["verdict"] == VERDICT_OK
    _, doc, _ = run(capsys, "cinitial", "terminal", "countdown1.coalg", "--bound", "3")
    assert doc["result"]["verdict"] == "found"
    assert doc["result"]["algebra"]["elements"] == ["0", "1"]
    _, doc, _ = run(capsys, "cinitial", "terminal", "forever.coalg", "--bound", "3")
    assert doc["result"]["verdict"] == VERDICT_INCONCLUSIVE
    _, doc, _ = run(capsys, "cinitial", "dualmap", "loop3.alg", "countdown1.coalg")
    assert doc["result"]["map"]["2"] == [0, 1]


def test_cinitial_dualmap_refuses_a_cycle_through_zero(capsys, tmp_path):
    loop = tmp_path / "loop.alg"
    loop.write_text("algebra idsucc { elements 0 1; zero 0; succ 0->1 1->0 }")
    code, _, err = run(capsys, "cinitial", "dualmap", str(loop), "countdown1.coalg")
    assert code == 2 and err.startswith("refused: PreconditionError")


def test_gf_commands(capsys):
    _, doc, _ = run(capsys, "gf", "conv", "parity.aut", "flip.gf")
    assert doc["result"]["states"] == ["even", "odd"]
    assert len(doc["result"]["algebra"]["elements"]) == 4
    _, doc, _ = run(capsys, "gf", "count", "parity.aut", "flip.gf", "flip.gf")
    assert isinstance(doc["result"]["count"], int)
    code, _, err = run(capsys, "gf", "count", "parity.aut", "two.alg", "flip.gf")
    assert code == 1 and "WRONG_KIND" in err


def test_laws_command(capsys):
    code, doc, err = run(capsys, "laws", "--max-size", "1", "--skip-mixed")
    assert code == 0 and doc["result"]["ok"] is True
    assert all(line.startswith("PASS") for line in err.strip().splitlines())


def test_laws_command_reports_corruption_without_failing(capsys):
    code, doc, err = run(capsys, "laws", "--max-size", "1", "--skip-mixed", "--corrupt-nabla")
    assert code == 0 and doc["result"]["ok"] is False
    assert "FAIL" in err


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
    assert capsys.readouterr().out.startswith("mlab ")
