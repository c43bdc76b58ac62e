"""End-to-end checks of the command-line surface.

Everything runs in-process through ``main(argv)`` except one subprocess
test that proves the module entry point works.  Documents are validated
here against the published schemas independently of the validation the
CLI performs before emitting.
"""

import io
import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from lpgeom.cli import main
from lpgeom.spaces import LpSpace, duality_map


def _schema(name):
    return json.loads(resources.files("lpgeom.schemas").joinpath(name).read_text())


def _write(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


_RAY_PROBLEM = {
    "operation": "project",
    "space": {"n": 3, "p": 3},
    "set": {"type": "ray", "vertex": [0, 0, 0], "direction": [-25, -37, -77]},
    "point": [-28, -35, -76],
}


def test_project_pinned_ray_instance(tmp_path, capsys):
    path = _write(tmp_path, _RAY_PROBLEM)
    code, out = _run(capsys, ["project", "--input", path, "--json"])
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, _schema("result.schema.json"))
    assert doc["status"] == "pass"
    point = doc["result"]["point"]
    assert max(abs(a - b) for a, b in zip(point, (-25.0, -37.0, -77.0))) < 1e-6
    assert doc["result"]["converged"] is True


def test_gproject_duality_image_returns_the_point(tmp_path, capsys):
    S = LpSpace(3, 3)
    v = S.point([1, -3, 2])
    doc = {
        "operation": "gproject",
        "space": {"n": 3, "p": 3},
        "set": {"type": "segment", "a": [3, -2, -1], "b": [1, -3, 2]},
        "functional": [float(c) for c in duality_map(v).coords],
    }
    code, out = _run(capsys, ["gproject", "--input", _write(tmp_path, doc), "--json"])
    assert code == 0
    res = json.loads(out)["result"]
    assert max(abs(a - b) for a, b in zip(res["point"], (1.0, -3.0, 2.0))) < 1e-9


def test_face_singleton_at_the_vertex(tmp_path, capsys):
    doc = {
        "operation": "face",
        "space": {"n": 3, "p": 3},
        "set": {"type": "ray", "vertex": [0, 0, 0], "direction": [25, 37, 77]},
        "functional": [-1, -1, -1],
    }
    code, out = _run(capsys, ["face", "--input", _write(tmp_path, doc), "--json"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["kind"] == "singleton"
    assert result["level"] == 0.0
    assert result["unbounded"] is False
    assert result["representatives"] == [[0.0, 0.0, 0.0]]


def test_face_unbounded_level_encodes_as_null(tmp_path, capsys):
    doc = {
        "operation": "face",
        "space": {"n": 3, "p": 3},
        "set": {"type": "ray", "vertex": [0, 0, 0], "direction": [25, 37, 77]},
        "functional": [1, 1, 1],
    }
    code, out = _run(capsys, ["face", "--input", _write(tmp_path, doc), "--json"])
    assert code == 0
    parsed = json.loads(out)
    jsonschema.validate(parsed, _schema("result.schema.json"))
    result = parsed["result"]
    assert result["level"] is None
    assert result["unbounded"] is True
    assert result["kind"] == "empty"


def test_vision_primal_route_reports_agreement(tmp_path, capsys):
    doc = {
        "operation": "vision",
        "space": {"n": 3, "p": 3},
        "set": {"type": "segment", "a": [3, -2, -1], "b": [1, -3, 2]},
        "point": [3, -2, -1],
        "probe_point": [4, -1.5, -2],
    }
    code, out = _run(capsys, ["vision", "--input", _write(tmp_path, doc), "--json"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result == {"member": True, "route": "primal", "routes_agree": True}


def test_vision_needs_exactly_one_probe(tmp_path, capsys):
    doc = {
        "operation": "vision",
        "space": {"n": 3, "p": 3},
        "set": {"type": "segment", "a": [3, -2, -1], "b": [1, -3, 2]},
        "point": [3, -2, -1],
    }
    code, _ = _run(capsys, ["vision", "--input", _write(tmp_path, doc)])
    assert code == 2


def test_classify_sphere_point_is_cuticle(tmp_path, capsys):
    doc = {
        "operation": "classify",
        "space": {"n": 3, "p": 3},
        "set": {"type": "ball", "r": 2.0},
        "point": [2, 0, 0],
    }
    code, out = _run(capsys, ["classify", "--input", _write(tmp_path, doc), "--json"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["verdict"] == "cuticle"
    assert result["witness"] is not None


def test_dualcone_metric_identity_defect(tmp_path, capsys):
    doc = dict(_RAY_PROBLEM, operation="dualcone")
    path = _write(tmp_path, doc)
    code, out = _run(
        capsys,
        ["dualcone", "--input", path, "--kind", "metric", "--check", "identity", "--json"],
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert math.isclose(result["defect"], -84.448390057094, rel_tol=1e-9)


def test_dualcone_metric_convexity_probe_finds_witness(tmp_path, capsys):
    doc = dict(_RAY_PROBLEM, operation="dualcone")
    del doc["point"]
    path = _write(tmp_path, doc)
    code, out = _run(
        capsys,
        ["dualcone", "--input", path, "--kind", "metric", "--check", "convexity",
         "--trials", "200", "--json"],
    )
    assert code == 0
    parsed = json.loads(out)
    jsonschema.validate(parsed, _schema("result.schema.json"))
    assert parsed["result"]["witness_found"] is True


def test_dualcone_generalized_identity(tmp_path, capsys):
    doc = {
        "operation": "dualcone",
        "space": {"n": 3, "p": 3},
        "sets": [
            {"type": "cone", "vertex": [0, 0, 0],
             "generators": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
            {"type": "cone", "vertex": [0, 0, 0],
             "generators": [[1, 1, 0], [0, 1, 1], [1, 0, 1]]},
        ],
    }
    path = _write(tmp_path, doc)
    code, out = _run(
        capsys,
        ["dualcone", "--input", path, "--kind", "generalized", "--check", "identity", "--json"],
    )
    assert code == 0
    parsed = json.loads(out)
    jsonschema.validate(parsed, _schema("result.schema.json"))
    assert parsed["result"]["ok"] is True


def test_unknown_field_is_rejected(tmp_path, capsys):
    doc = dict(_RAY_PROBLEM, bogus_field=1)
    code, _ = _run(capsys, ["project", "--input", _write(tmp_path, doc)])
    assert code == 2


def test_unknown_set_type_is_rejected(tmp_path, capsys):
    doc = dict(_RAY_PROBLEM, set={"type": "blob", "stuff": [1]})
    code, _ = _run(capsys, ["project", "--input", _write(tmp_path, doc)])
    assert code == 2


def test_operation_mismatch_is_a_usage_error(tmp_path, capsys):
    code, _ = _run(capsys, ["gproject", "--input", _write(tmp_path, _RAY_PROBLEM)])
    assert code == 2


def test_invalid_json_is_a_usage_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _ = _run(capsys, ["project", "--input", str(path)])
    assert code == 2


def test_reads_problem_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(_RAY_PROBLEM)))
    code, out = _run(capsys, ["project", "--json"])
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_unknown_fuzz_target_is_an_error(capsys):
    code, _ = _run(capsys, ["fuzz", "--target", "no-such-thing"])
    assert code == 2


def test_fuzz_run_emits_a_valid_report(capsys):
    code, out = _run(
        capsys,
        ["fuzz", "--target", "duality-identities", "--trials", "25", "--json"],
    )
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, _schema("report.schema.json"))
    assert doc["kind"] == "fuzz"
    assert doc["records"][0]["status"] == "pass"


def test_verify_report_is_deterministic_up_to_timing(capsys):
    code1, out1 = _run(capsys, ["verify", "--json", "--seed", "7"])
    code2, out2 = _run(capsys, ["verify", "--json", "--seed", "7"])
    assert code1 == code2 == 0
    a, b = json.loads(out1), json.loads(out2)
    jsonschema.validate(a, _schema("report.schema.json"))
    a.pop("elapsed_seconds")
    b.pop("elapsed_seconds")
    assert a == b


def test_verify_records_are_sorted_by_check_id(capsys):
    code, out = _run(capsys, ["verify", "--json"])
    assert code == 0
    ids = [r["check_id"] for r in json.loads(out)["records"]]
    assert ids == sorted(ids)
    assert len(ids) == 12


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "lpgeom.cli", "fuzz", "--target", "set-sampling",
         "--trials", "10"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASS" in proc.stdout


def test_emitted_floats_round_trip_exactly(tmp_path, capsys):
    path = _write(tmp_path, _RAY_PROBLEM)
    _, out1 = _run(capsys, ["project", "--input", path, "--json"])
    _, out2 = _run(capsys, ["project", "--input", path, "--json"])
    p1 = json.loads(out1)["result"]["point"]
    p2 = json.loads(out2)["result"]["point"]
    assert p1 == p2
    assert json.loads(json.dumps(p1)) == p1
