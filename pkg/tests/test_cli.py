import json
import subprocess
import sys

import pytest

from conftest import entry
from contactkit.cli import TRUNCATED, emit_report, main, run_command
from contactkit.manifest import dumps, export_entry


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coincidence_on_r2n1(capsys):
    code, out, _ = run(["check", "--suite", "coincidence", "--catalog", "r2n1(n=1)"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["exit"] == 0
    assert all(c["hypothesis_flags"]["nabla = *nabla"] for c in rep["checks"])


def test_tanno_on_s3_bilegendrian(capsys):
    code, out, _ = run(["check", "--suite", "tanno", "--connection", "bl", "--catalog", "s3"], capsys)
    rep = json.loads(out)
    assert code == 1
    failed = [c for c in rep["checks"] if c["verdict"] == "fail"]
    assert [c["name"] for c in failed] == ["tanno[bl]: (iii) T(xi, phi V) = -phi T(xi, V)"]
    assert "T(xi, phi V) = 2*Y; -phi T(xi, V) = -2*Y" in failed[0]["witness"]


def test_malformed_manifest(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text('{"schema_version": 1, "chart": {"coords": ["x"]}, "structure": {}}')
    code, out, err = run(["connection", "--connection", "lc", "--manifest", str(p)], capsys)
    assert code == 2 and out == ""
    assert "structure.eta" in err or "distributions" in err


def test_missing_manifest(capsys):
    code, _, err = run(["validate", "--manifest", "/nonexistent/m.json"], capsys)
    assert code == 2 and "cannot read manifest" in err


def test_unknown_catalog(capsys):
    code, _, err = run(["validate", "--catalog", "torus"], capsys)
    assert code == 2 and "torus" in err


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "--catalog", "s3"])
    assert exc.value.code == 2


def test_subject_required(capsys):
    assert run(["validate"], capsys)[0] == 2
    assert run(["validate", "--catalog", "s3", "--manifest", "x.json"], capsys)[0] == 2


def test_suite_mismatch(capsys):
    assert run(["check", "--suite", "appendix", "--catalog", "s3"], capsys)[0] == 2
    assert run(["check", "--suite", "tanno", "--catalog", "r2n"], capsys)[0] == 2
    assert run(["check", "--suite", "nonsense", "--catalog", "s3"], capsys)[0] == 2


def test_s3_coincidence_flag(capsys):
    _, out, _ = run(["check", "--suite", "coincidence", "--catalog", "s3"], capsys)
    rep = json.loads(out)
    assert all(c["hypothesis_flags"]["flat(L)"] is False for c in rep["checks"])


def test_deterministic(capsys):
    argv = ["check", "--catalog", "kappa-mu", "--suite", "tanno", "--connection", "bl"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_empty_report():
    doc = json.loads(emit_report({"schema_version": 1, "engine_version": "x", "command": "check",
                                  "subject": "none", "checks": [], "exit": 0}))
    assert doc["checks"] == [] and doc["exit"] == 0


def test_text_format(capsys):
    code, out, _ = run(["validate", "--catalog", "s3", "--format", "text"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "validate  s3"
    assert "PASS  contact metric: eta(xi) = 1" in out
    assert out.rstrip().endswith("exit 0")


def test_truncation(capsys):
    _, out, _ = run(["check", "--suite", "tanno", "--connection", "bl", "--catalog", "s3",
                     "--max-witness-len", "12"], capsys)
    rep = json.loads(out)
    w = [c["witness"] for c in rep["checks"] if "witness" in c][0]
    assert w.endswith(TRUNCATED) and len(w) == 12 + len(TRUNCATED)


def test_compare(capsys):
    code, out, _ = run(["compare", "--connection", "tw", "--connection", "bl", "--catalog", "s3"], capsys)
    rep = json.loads(out)
    assert code == 1
    assert rep["data"]["difference"] == {"S(xi, X)": "2*Y", "S(xi, Y)": "-2*X"}
    code, _, _ = run(["compare", "--connection", "tw", "--connection", "bl", "--catalog", "r2n1"], capsys)
    assert code == 0
    assert run(["compare", "--connection", "tw", "--catalog", "s3"], capsys)[0] == 2


def test_connection_table(capsys):
    code, out, _ = run(["connection", "--connection", "lc", "--catalog", "s3"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["data"]["connection lc"]["nabla_X Y"] == "xi"


def test_symplectic_connections(capsys):
    code, out, _ = run(["connection", "--connection", "bl", "--connection", "lc", "--catalog", "r2n"],
                       capsys)
    assert code == 0
    assert run(["connection", "--connection", "tw", "--catalog", "r2n"], capsys)[0] == 2


def test_classify(capsys):
    code, out, _ = run(["classify", "--catalog", "s3"], capsys)
    rep = json.loads(out)
    assert rep["data"]["classification"]["L"]["verdict"] == "non-degenerate"
    assert run(["classify", "--catalog", "r2n"], capsys)[0] == 2


def test_validate_failure_exit(capsys):
    assert run(["validate", "--catalog", "darboux(n=1, as_printed=true)"], capsys)[0] == 1


def test_export_and_reimport(tmp_path, capsys):
    p = tmp_path / "s3.json"
    assert run(["export", "--catalog", "s3", "--output", str(p)], capsys)[0] == 0
    code, out, _ = run(["check", "--manifest", str(p), "--suite", "tanno", "--connection", "bl"], capsys)
    assert code == 1
    assert json.loads(out)["subject"] == "s3"


def test_manifest_requested_checks(tmp_path, capsys):
    p = tmp_path / "r3.json"
    run(["export", "--catalog", "r2n1", "--suite", "identities", "--output", str(p)], capsys)
    _, out, _ = run(["check", "--manifest", str(p)], capsys)
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert names and all(n.startswith("identities: ") for n in names)


def test_provenance_and_timing(capsys):
    _, out, _ = run(["validate", "--catalog", "s3", "--timing"], capsys)
    rep = json.loads(out)
    assert rep["provenance"]["sasakian"] == {"tag": "published", "value": True}
    assert rep["timing_seconds"] >= 0
    assert rep["schema_version"] == 1 and rep["engine_version"]


def test_appendix_suite(capsys):
    code, out, _ = run(["check", "--catalog", "r2-perturbed"], capsys)
    rep = json.loads(out)
    assert code == 0
    names = {c["name"]: c for c in rep["checks"]}
    assert names["appendix: bi-Lagrangian = Levi-Civita"]["verdict"] == "pass"
    assert names["appendix (given J, g): nabla g = 0 <=> nabla J = 0"]["verdict"] == "pass"


def test_appendix_skips_kaehler_on_non_parallel_frame(tmp_path, capsys):
    doc = json.loads(dumps(export_entry(entry("r2n", 1))))
    doc["distributions"]["F"]["vectors"] = [["x1", "1"]]
    p = tmp_path / "sheared.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(["check", "--manifest", str(p)], capsys)
    names = {c["name"]: c for c in json.loads(out)["checks"]}
    assert names["appendix: Kaehler construction"]["verdict"] == "skip"
    assert "not parallel" in names["appendix: Kaehler construction"]["detail"]
    assert code == 0


def test_run_command_api():
    rep, code = run_command("check", catalog="r2n1", suite=["tilde-theorem"])
    assert code == 0 and rep["command"] == "check"


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "contactkit.cli", "validate", "--catalog", "r2n1",
                          "--format", "text"], capture_output=True, text=True)
    assert out.returncode == 0 and "exit 0" in out.stdout
