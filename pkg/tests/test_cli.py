"""Command-line interface: envelopes, exit codes, determinism."""
import json

from swlie import CONVENTION_TAG, build_family, dump_algebra
from swlie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def write_doc(tmp_path, doc, name="algebra.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_envelope_shape(capsys):
    code, doc, err = run_json(capsys, "sw", "--family", "A2", "--params", "l1=1,l2=2")
    assert code == 0
    assert doc["tool"] == "swlie"
    assert doc["convention"] == CONVENTION_TAG
    assert doc["command"] == "sw"
    assert doc["input"]["family"] == "A2"
    assert doc["results"]["sw_norm2"] == -3
    assert "completed in" in err


def test_sw_symbolic_nonzero_components(capsys):
    code, doc, _ = run_json(capsys, "sw", "--family", "A3")
    assert code == 0
    nonzero = doc["results"]["nonzero"]
    assert len(nonzero) == 16
    assert all(isinstance(v, str) for v in nonzero.values())


def test_curvature_report(capsys):
    code, doc, _ = run_json(
        capsys, "curvature", "--family", "A1", "--params", "l1=1,l2=1,l3=1"
    )
    assert code == 0
    res = doc["results"]
    assert res["scalar_curvature"] == "5/2" or res["scalar_curvature"] == 2.5
    for key in ("christoffel", "ricci", "schouten", "sw"):
        assert key in res


def test_predicate_numeric(capsys):
    code, doc, _ = run_json(
        capsys, "predicate", "--family", "A2", "--params", "l1=0,l2=1",
        "--which", "isotropic",
    )
    assert code == 0
    assert doc["results"]["verdict"] is True
    code2, doc2, _ = run_json(
        capsys, "predicate", "--family", "A2", "--params", "l1=1,l2=2",
        "--which", "isotropic",
    )
    assert code2 == 0
    assert doc2["results"]["verdict"] is False


def test_predicate_symbolic_vector(capsys):
    code, doc, _ = run_json(
        capsys, "predicate", "--family", "A3", "--which", "harmonic-v"
    )
    assert code == 0
    assert doc["results"]["conditions"] == ["l*V3 - 2*V1"]


def test_predicate_explicit_vector(capsys):
    code, doc, _ = run_json(
        capsys, "predicate", "--family", "A3", "--params", "l=2",
        "--which", "harmonic-v", "--vector", "1,0,1",
    )
    assert code == 0
    assert doc["results"]["verdict"] in (True, False)


def test_partial_parameter_binding(capsys):
    code, doc, _ = run_json(
        capsys, "predicate", "--family", "A2", "--params", "l2=0",
        "--which", "isotropic",
    )
    assert code == 0
    assert doc["results"]["conditions"] == ["l1^6"]


def test_system_all_pairs_exit_zero(capsys):
    for fam in ("A2", "A3"):
        for pred in (
            "isotropy",
            "almost-harmonic-curl",
            "harmonic-contraction",
            "harmonic-vector",
        ):
            code, doc, _ = run_json(
                capsys, "system", "--family", fam, "--predicate", pred
            )
            assert code == 0, (fam, pred)
            assert doc["results"]["match"]["verdict"] in ("MATCH", "MATCH-up-to-span")


def test_table_exit_codes(capsys):
    # tables carrying discrepancy findings exit 1, clean tables exit 0
    expected = {1: 1, 2: 0, 3: 0, 4: 1}
    for tid, want in expected.items():
        code, out, _ = run(capsys, "table", "--id", str(tid), "--draws", "60")
        assert code == want, (tid, code)
        json.loads(out)


def test_table_bad_id_is_usage_error(capsys):
    code, out, err = run(capsys, "table", "--id", "9")
    assert code == 2


def test_audit_exits_one_on_discrepancies(capsys):
    code, doc, _ = run_json(capsys, "audit", "--draws", "25")
    assert code == 1
    counts = doc["results"]["counts"]
    assert counts["DISCREPANT"] == 7
    assert len(doc["results"]["findings"]) == 40


def test_validate_good_file(capsys, tmp_path):
    doc = dump_algebra(build_family("A2", {"l1": 1, "l2": 2}))
    path = write_doc(tmp_path, doc)
    code, rep, _ = run_json(capsys, "validate", path)
    assert code == 0
    assert rep["results"]["verdict"] == "CONFIRMED"
    assert rep["results"]["jacobi_violations"] == []


def test_validate_jacobi_violation_exits_one(capsys, tmp_path):
    doc = dump_algebra(build_family("A4", {"a": 1, "b": 1, "l3": 1}))
    path = write_doc(tmp_path, doc)
    code, rep, _ = run_json(capsys, "validate", path)
    assert code == 1
    assert rep["results"]["verdict"] == "DISCREPANT"
    triples = [v["triple"] for v in rep["results"]["jacobi_violations"]]
    assert triples == [[1, 2, 3]]


def test_validate_singular_metric_exits_two(capsys, tmp_path):
    doc = {
        "name": "bad",
        "dim": 3,
        "variables": [],
        "metric": [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
        "brackets": [],
    }
    path = write_doc(tmp_path, doc)
    code, out, err = run(capsys, "validate", path)
    assert code == 2
    assert "error:" in err


def test_validate_missing_file_exits_two(capsys):
    code, out, err = run(capsys, "validate", "/nonexistent/algebra.json")
    assert code == 2
    assert "error:" in err


def test_invalid_json_reports_position(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "x",')
    code, out, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "line" in err


def test_strict_jacobi_on_other_commands(capsys, tmp_path):
    doc = dump_algebra(build_family("A4", {"a": 1, "b": 1, "l3": 1}))
    path = write_doc(tmp_path, doc)
    # without --strict the command runs and warns on stderr
    code, out, err = run(capsys, "sw", "--file", path)
    assert code == 0
    assert "jacobi" in err.lower() or "Jacobi" in err
    # with --strict it refuses
    code2, out2, err2 = run(capsys, "sw", "--file", path, "--strict")
    assert code2 == 2


def test_usage_errors(capsys):
    # no input source
    assert run(capsys, "sw")[0] == 2
    # both input sources
    assert run(capsys, "sw", "--family", "A2", "--file", "x.json")[0] == 2
    # unknown parameter name
    assert run(capsys, "sw", "--family", "A2", "--params", "zz=1")[0] == 2
    # malformed params
    assert run(capsys, "sw", "--family", "A2", "--params", "l1")[0] == 2
    # unknown subcommand
    assert run(capsys, "frobnicate")[0] == 2
    # unknown flag
    assert run(capsys, "sw", "--family", "A2", "--bogus")[0] == 2


def test_scan_validation_errors(capsys):
    assert run(capsys, "scan", "--family", "A2", "--grid", "1")[0] == 2
    assert run(capsys, "scan", "--family", "A2", "--box", "zz=0:1")[0] == 2
    assert run(capsys, "scan", "--family", "A2", "--box", "l1=2:2,l2=0:1")[0] == 2
    assert run(capsys, "scan", "--family", "A2", "--predicate", "harmonic-vector")[0] == 2


def test_scan_csv_byte_identical(capsys):
    args = ("scan", "--family", "A2", "--grid", "21", "--csv")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.splitlines()[0] == "l1,l2,norm2,max_abs_sw,locus_distance"


def test_scan_json_report(capsys):
    code, doc, _ = run_json(capsys, "scan", "--family", "A3", "--grid", "11")
    assert code == 0
    res = doc["results"]
    assert res["flagged_count"] == 10
    assert res["max_locus_distance"] == 0.0


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "sw", "--family", "A2", "--params", "l1=1,l2=2", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    doc = json.loads(target.read_text())
    assert doc["results"]["sw_norm2"] == -3


def test_version_flag(capsys):
    # argparse raises SystemExit internally; main converts it to a code
    assert main(["--version"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("swlie ")
