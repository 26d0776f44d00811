import io
import json
import shutil
import subprocess
import sys

from quiverforge.cli import run
from conftest import CORPUS


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_natural_valued_quiver_of_kronecker():
    code, out, _ = call("natural-valued-quiver", "examples/kronecker.json")
    assert code == 0
    assert "1 -> 2 (2,2)" in out


def test_missing_file_is_an_input_error():
    code, _, err = call("ext-quiver", "missing.json")
    assert code == 2 and "missing.json" in err


def test_malformed_json_reports_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "quiver",\n "vertices": [1,,2]}')
    code, _, err = call("dot", str(bad))
    assert code == 2 and "line 2, column" in err


def test_schema_error_reports_json_path(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "quiver", "vertices": [1], "arrows": [["a", 1, 9]]}))
    code, _, err = call("dot", str(bad))
    assert code == 2 and "$.arrows[0].target" in err


def test_verify_all_corpus_is_green_and_deterministic():
    code, out, _ = call("verify", "--all")
    assert code == 0
    code2, out2, _ = call("verify", "--all")
    assert out == out2
    heads = [line.split()[1] for line in out.splitlines() if line.startswith("verify ")]
    assert heads == sorted(heads) and len(heads) == len(list(CORPUS.glob("*.json")))
    assert out.rstrip().endswith("0 input errors")


def test_verify_all_with_a_failing_entry(tmp_path):
    shutil.copy(CORPUS / "gpa_a2.json", tmp_path)
    (tmp_path / "broken_differential.json").write_text(json.dumps(
        {"kind": "differential", "gpa": "gpa_a2.json", "images": {"(1)": "(1)"}}))
    code, out, _ = call("verify", "--all", str(tmp_path))
    assert code == 1 and "FAIL" in out


def test_verify_all_empty_dir(tmp_path):
    code, _, err = call("verify", "--all", str(tmp_path))
    assert code == 2 and "no .json documents" in err


def test_corpus_env_override(tmp_path, monkeypatch):
    shutil.copy(CORPUS / "a2.json", tmp_path)
    monkeypatch.setenv("QUIVERFORGE_CORPUS", str(tmp_path))
    code, out, _ = call("verify", "--all")
    assert code == 0 and out.count("overall:") == 1


def test_json_output_parses():
    code, out, _ = call("ext-quiver", str(CORPUS / "blowup_kronecker_1_2.json"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ext_dims"] == [[0, 2], [0, 0]] and data["ok"]


def test_dot_outputs():
    code, out, _ = call("natural-valued-quiver", str(CORPUS / "blowup_a2_2_3.json"), "--format", "dot")
    assert code == 0 and '"1" -> "2" [label="(4,9)"];' in out
    code, out, _ = call("dot", str(CORPUS / "kronecker.json"))
    assert code == 0 and out.startswith("digraph")
    code, _, err = call("gpa-mul", str(CORPUS / "gpa_a2.json"), "(1)", "a", "--format", "dot")
    assert code == 2


def test_gpa_mul():
    code, out, _ = call("gpa-mul", str(CORPUS / "gpa_a2_m2.json"), "(E21)", "(E12) a")
    assert code == 0 and out.strip().endswith("= (E22) a (2)")
    code, _, err = call("gpa-mul", str(CORPUS / "gpa_a2.json"), "(1)", "zz")
    assert code == 2 and "unknown arrow" in err


def test_loop_eliminate():
    code, out, _ = call("loop-eliminate", str(CORPUS / "loop_arrow.json"), "--truncate", "3")
    assert code == 0 and "anomaly" in out and "(1, 0)" in out
    code, _, err = call("loop-eliminate", str(CORPUS / "loop_arrow.json"))
    assert code == 2 and "--truncate" in err


def test_iso_outcomes():
    code, out, _ = call("iso", str(CORPUS / "counterexample_one_vertex.json"),
                        str(CORPUS / "counterexample_two_vertices.json"))
    assert code == 1 and "refusing" in out
    code, out, _ = call("iso", str(CORPUS / "gpa_a2_m2.json"), str(CORPUS / "gpa_a2_m2.json"))
    assert code == 0 and out.strip() == "iso: 1 -> 1, 2 -> 2"
    code, out, _ = call("iso", str(CORPUS / "modulation_a2.json"), str(CORPUS / "modulation_kronecker.json"))
    assert code == 1 and "absent" in out
    code, _, _ = call("iso", str(CORPUS / "a2.json"), str(CORPUS / "gpa_a2.json"))
    assert code == 2


def test_diff_check_failure_is_located(tmp_path):
    shutil.copy(CORPUS / "gpa_a2.json", tmp_path)
    doc = tmp_path / "d.json"
    doc.write_text(json.dumps({"kind": "differential", "gpa": "gpa_a2.json", "images": {"(1)": "a + (1)"}}))
    code, out, _ = call("diff-check", str(doc))
    assert code == 1 and "first grading violation" in out
    code, out, _ = call("diff-check", str(CORPUS / "differential_a2.json"))
    assert code == 0


def test_classify_and_rep_roundtrip():
    code, out, _ = call("classify", str(CORPUS / "modulation_m2_m3.json"))
    assert code == 0 and "pre: no" in out and "1 -> 2 (1,2)" in out
    code, out, _ = call("rep-roundtrip", str(CORPUS / "modulation_kronecker.json"), "--seed", "4")
    assert code == 0 and "PASS  G(F(V)) = V" in out
    code, out, _ = call("rep-roundtrip", str(CORPUS / "rep_a2.json"))
    assert code == 0


def test_wrong_kind_and_usage_errors():
    code, _, err = call("natural-quiver", str(CORPUS / "gpa_a2.json"))
    assert code == 2 and "bound-quiver-algebra" in err
    code, _, _ = call("frobnicate")
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quiverforge", "natural-valued-quiver", "examples/kronecker.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "(2,2)" in proc.stdout
