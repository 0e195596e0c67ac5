import json

import pytest

import run
from gsn_constants import DATA_DIR, ExitCode, Suite


def report_of(capsys, argv) -> tuple:
    code = run.main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_tube_on_vec(capsys):
    code, report = report_of(capsys, ["tube", "--category", "vec"])
    assert code == ExitCode.PASS
    assert report["dims"] == {"blocks[e]": 1}


def test_tube_single_grade(capsys):
    code, report = report_of(capsys, ["tube", "--category", "vec_z2_graded", "--grade", "g"])
    assert code == ExitCode.PASS
    assert list(report["dims"]) == ["blocks[g]"]


def test_sn_dim_torus(capsys):
    code, report = report_of(capsys, ["sn-dim", "--category", "vec_z2", "--genus", "1"])
    assert code == ExitCode.PASS
    assert report["dims"] == {"sn": 4, "ksn": 4}
    assert report["surface"]["genus"] == 1


def test_sn_dim_sphere(capsys):
    code, report = report_of(capsys, ["sn-dim", "--category", "vec_z2", "--marked", "2"])
    assert code == ExitCode.PASS
    assert report["dims"] == {"sn": 4, "ksn": 1}


def test_sn_dim_from_surface_file(capsys, tmp_path):
    _, built = report_of(capsys, ["sn-dim", "--category", "vec_z2", "--genus", "1"])
    path = tmp_path / "torus.json"
    path.write_text(json.dumps(built["surface"]))
    code, report = report_of(capsys, ["sn-dim", "--category", "vec_z2", "--surface", str(path)])
    assert code == ExitCode.PASS
    assert report["dims"] == built["dims"]


def test_validate_bundled(capsys):
    code, report = report_of(capsys, ["validate", "--category", "vec_s3"])
    assert code == ExitCode.PASS
    assert report["checks"] == []


def test_validate_corrupted(capsys, tmp_path):
    data = json.loads((DATA_DIR / "vec_z2.json").read_text())
    data["fsymbols"] = [[1, 1, 1, 1, 0, 0, 2]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    code, report = report_of(capsys, ["validate", "--category", str(path)])
    assert code == ExitCode.FAILURE
    assert {c["name"] for c in report["checks"]} == {"pentagon"}


def test_missing_file(capsys, tmp_path):
    code = run.main(["validate", "--category", str(tmp_path / "nowhere.json")])
    assert code == ExitCode.INPUT_ERROR
    assert capsys.readouterr().out == ""


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run.main(["sn-dim", "--category", str(path)]) == ExitCode.INPUT_ERROR


def test_unknown_label(tmp_path):
    path = tmp_path / "labels.json"
    path.write_text(json.dumps(["nope", "nope"]))
    argv = ["sn-dim", "--category", "vec_z2", "--boundaries", "e,e", "--labels", str(path)]
    assert run.main(argv) == ExitCode.INPUT_ERROR


def test_verify_no_suites(capsys):
    code, report = report_of(capsys, ["verify", "--suite", ""])
    assert code == ExitCode.PASS
    assert report["checks"] == []


def test_verify_vec(capsys):
    code, report = report_of(capsys, ["verify", "--category", "vec",
                                      "--suite", f"{Suite.CATEGORY},{Suite.DIAGRAM},{Suite.TUBE}"])
    assert code == ExitCode.PASS
    assert report["checks"]


def test_reports_do_not_depend_on_jobs(tmp_path, capsys):
    suites = f"{Suite.CATEGORY},{Suite.DIAGRAM},{Suite.GLUING}"
    outputs = []
    for jobs in (1, 2):
        out = tmp_path / f"report{jobs}.json"
        run.main(["verify", "--category", "vec_z2", "--suite", suites, "--jobs", str(jobs),
                  "--out", str(out)])
        outputs.append(out.read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["verify", "--suite", "nope"],
    ["verify", "--jobs", "0"],
    ["sn-dim", "--surface", "s.json", "--genus", "1"],
])
def test_bad_arguments(argv):
    with pytest.raises(SystemExit):
        run.parse_args(argv)


def test_default_marked():
    assert run.default_marked(0, 0) == 2
    assert run.default_marked(0, 1) == 1
    assert run.default_marked(1, 0) == 0
    assert run.default_marked(0, 2) == 0
