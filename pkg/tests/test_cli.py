import json
import subprocess
import sys
from pathlib import Path

import pytest

from twodet.cli import main

GOLDEN = Path(__file__).parent / "data" / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("argv,golden", [
    (["complex", "--which", "R", "--d", "1", "--e", "4", "count"], "complex_R_1_4_count.txt"),
    (["poset", "--c", "6", "--d", "3"], "poset_6_3.json"),
    (["relations", "--d", "1", "--e", "3"], "relations_1_3.json"),
    (["complex", "--which", "F", "--d", "0", "--e", "4", "fvector"], "fvector_F_0_4.csv"),
    (["complex", "--which", "F", "--d", "0", "--e", "4", "betti"], "betti_F_0_4.tsv"),
])
def test_golden_outputs(capsys, argv, golden):
    code, out = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_dot_file_is_golden(tmp_path, capsys):
    dot = tmp_path / "h63.dot"
    code, out = run(capsys, "poset", "--c", "6", "--d", "3", "--dot", str(dot))
    assert code == 0
    assert dot.read_text(encoding="utf-8") == (GOLDEN / "h63.dot").read_text(encoding="utf-8")
    data = json.loads(out)
    assert len(data["nodes"]) == 19 and data["minimal"] == ["(1^3;4)"]


def test_repeat_runs_identical(capsys):
    argv = ["family", "--move", "peel", "--type", "(2,1;1)", "--seed", "3"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_gb_verify_rees(capsys):
    code, out = run(capsys, "gb-verify", "--d", "1", "--e", "4", "--rees")
    cert = json.loads(out)
    assert code == 0 and cert["ok"] and "failing_pair" not in cert


def test_gb_verify_fiber_with_oracle(capsys):
    code, out = run(capsys, "gb-verify", "--d", "2", "--e", "2", "--fiber", "--oracle")
    assert code == 0 and json.loads(out)["oracle_lm_equal"]


def test_kernel(capsys):
    code, out = run(capsys, "kernel", "--d", "1", "--e", "3")
    assert code == 0 and len(json.loads(out)["generators"]) == 1


def test_kernel_cap_exceeded(capsys):
    code, out = run(capsys, "kernel", "--d", "1", "--e", "4", "--rees", "--degree-cap", "1")
    assert code == 4 and json.loads(out)["error"] == "cap_exceeded"


def test_classify_and_normal_form_roundtrip(tmp_path, capsys):
    blocks = tmp_path / "blocks.json"
    blocks.write_text(json.dumps([{"kind": "scroll", "size": 2}, {"kind": "jordan", "size": 1, "eigenvalue": 3}]))
    code, out = run(capsys, "normal-form", str(blocks))
    assert code == 0
    mat = tmp_path / "m.json"
    mat.write_text(out)
    code, out = run(capsys, "classify", str(mat), "--field", "rational")
    assert code == 0 and json.loads(out)["type"] == "(2;1)"


def test_classify_not_maximal(tmp_path, capsys):
    blocks = tmp_path / "b.json"
    blocks.write_text(json.dumps([{"kind": "jordan", "size": 1, "eigenvalue": 1},
                                  {"kind": "jordan", "size": 1, "eigenvalue": 1},
                                  {"kind": "scroll", "size": 1}]))
    run(capsys, "normal-form", str(blocks), "-o", str(tmp_path / "m.json"))
    code, out = run(capsys, "classify", str(tmp_path / "m.json"))
    assert code == 3 and json.loads(out)["error"] == "NotMaximalCodim"


def test_complex_cm(capsys):
    code, out = run(capsys, "complex", "--which", "F", "--d", "1", "--e", "4", "cm", "--field", "fp:2")
    assert code == 0 and json.loads(out)["ok"]


def test_complex_count_json(capsys):
    code, out = run(capsys, "--format", "json", "complex", "--which", "F", "--d", "1", "--e", "4", "count")
    assert json.loads(out) == {"schema": 1, "count": 10}


def test_family_examples(capsys):
    code, out = run(capsys, "family", "--move", "peel", "--type", "(2,1;1)", "--samples", "0,1,2")
    rep = json.loads(out)
    assert code == 0 and rep["types"][0] == "(1^2;1^2)" and rep["ok"]
    code, out = run(capsys, "family", "--move", "merge", "--type", "(1,1;1,1)", "--samples", "0,1,3")
    rep = json.loads(out)
    assert code == 0 and rep["target"] == "(1^2;2)"


def test_invariants(capsys):
    code, out = run(capsys, "invariants", "--c", "4", "--d", "1")
    rep = json.loads(out)
    assert code == 0 and rep["fiber_formula"]["mult"] == 10


def test_input_errors(capsys):
    assert run(capsys, "relations", "--d", "0", "--e", "1")[0] == 3
    assert run(capsys, "classify", "/nonexistent.json")[0] == 3
    assert run(capsys, "invariants", "--c", "3", "--d", "9")[0] == 3


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["complex", "--which", "Q", "--d", "1", "--e", "4", "count"])
    assert exc.value.code == 3
    assert json.loads(capsys.readouterr().out)["error"] == "usage"


def test_field_env_override(monkeypatch, capsys):
    monkeypatch.setenv("TWODET_FIELD", "rational")
    code, out = run(capsys, "gb-verify", "--d", "1", "--e", "3")
    assert json.loads(out)["field"] == "QQ"


def test_console_script_runs():
    res = subprocess.run([sys.executable, "-m", "twodet.cli", "complex", "--which", "R", "--d", "1", "--e", "5",
                          "count"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "89\n"
