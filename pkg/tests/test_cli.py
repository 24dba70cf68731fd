"""Command-line interface behavior and output contracts."""

import json
import subprocess
import sys

from warntrack.cli import main
from helpers import build_scenario, make_warning, shifted_block_scenario, top_insertion_scenario


def run_cli(argv):
    return main(argv)


def _json_tail(out: str) -> dict:
    """Parse the JSON document that follows the human-readable diff text."""
    lines = out.splitlines()
    start = max(i for i, line in enumerate(lines) if line == "{")
    return json.loads("\n".join(lines[start:]))


def _identity_scenario():
    files = {"A.java": "class A {\n  int x;\n}\n"}
    warnings = [make_warning(file_path="A.java", class_name="A", start_line=2)]
    return build_scenario(files, dict(files), warnings, list(warnings))


def _track_args(paths, out, mode="statictracker", extra=()):
    args = [
        "track",
        "--mode", mode,
        "--pre-report", paths["pre_report"],
        "--post-report", paths["post_report"],
        "--pre-src", paths["pre_src"],
        "--post-src", paths["post_src"],
        "--out", str(out),
    ]
    if "refactorings" in paths:
        args += ["--refactorings", paths["refactorings"]]
    if "renames" in paths:
        args += ["--renames", paths["renames"]]
    args += list(extra)
    return args


def test_track_identity_fixture(tmp_path):
    scenario = _identity_scenario()
    paths = scenario.materialize(tmp_path)
    out = tmp_path / "result.json"
    assert run_cli(_track_args(paths, out)) == 0
    payload = json.loads(out.read_text())
    assert payload["removed_fix"] == []
    assert payload["removed_non_fix"] == []
    assert payload["newly_introduced"] == []
    assert payload["persistent_pre_count"] == 1


def test_track_shifted_block_in_baseline_mode(tmp_path):
    scenario = shifted_block_scenario()
    paths = scenario.materialize(tmp_path)
    out = tmp_path / "result.json"
    assert run_cli(_track_args(paths, out, mode="sota")) == 0
    payload = json.loads(out.read_text())
    removed = sorted(payload["removed_fix"] + payload["removed_non_fix"])
    assert removed == ["pre:000000", "pre:000001"]
    assert payload["newly_introduced"] == ["post:000001", "post:000002"]
    assert payload["pairs"] == [
        {"pre_id": "pre:000002", "post_id": "post:000000", "strategy": "exact"}
    ]


def test_track_missing_snapshot_root_exits_2(tmp_path, capsys):
    scenario = _identity_scenario()
    paths = scenario.materialize(tmp_path)
    paths["pre_src"] = str(tmp_path / "does-not-exist")
    out = tmp_path / "result.json"
    assert run_cli(_track_args(paths, out)) == 2
    assert "snapshot root not found" in capsys.readouterr().err


def test_track_rejects_bad_report(tmp_path, capsys):
    scenario = _identity_scenario()
    paths = scenario.materialize(tmp_path)
    bad = tmp_path / "bad_report.xml"
    bad.write_text("<Report><WarningInstance>")
    paths["pre_report"] = str(bad)
    assert run_cli(_track_args(paths, tmp_path / "r.json")) == 2
    assert "error[reports]" in capsys.readouterr().err


def test_evaluate_perfect_fixture(tmp_path, capsys):
    scenario = _identity_scenario()
    paths = scenario.materialize(tmp_path)
    out = tmp_path / "result.json"
    run_cli(_track_args(paths, out))
    truth = tmp_path / "truth.json"
    truth.write_text(json.dumps([
        {"id": "pre:000000", "status": "persistent"},
        {"id": "post:000000", "status": "persistent"},
    ]))
    assert run_cli(["evaluate", str(out), str(truth)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["per_status"]["persistent"]["precision"] == 1.0


def test_evaluate_empty_predictions_report_null(tmp_path, capsys):
    result = tmp_path / "result.json"
    result.write_text(json.dumps({
        "mode": "statictracker", "pairs": [],
        "removed_fix": [], "removed_non_fix": [], "newly_introduced": [],
    }))
    truth = tmp_path / "truth.json"
    truth.write_text("[]")
    assert run_cli(["evaluate", str(result), str(truth)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["combined"]["precision"] is None


def test_evaluate_unknown_id_exits_3(tmp_path, capsys):
    result = tmp_path / "result.json"
    result.write_text(json.dumps({
        "mode": "statictracker", "pairs": [],
        "removed_fix": ["pre:000000"], "removed_non_fix": [], "newly_introduced": [],
    }))
    truth = tmp_path / "truth.json"
    truth.write_text(json.dumps([{"id": "nope:000009", "status": "removed_fix"}]))
    assert run_cli(["evaluate", str(result), str(truth)]) == 3
    assert "nope:000009" in capsys.readouterr().err


def test_diff_identical_files(tmp_path, capsys):
    f = tmp_path / "same.java"
    f.write_text("a\nb\n")
    assert run_cli(["diff", str(f), str(f)]) == 0
    out = capsys.readouterr().out
    payload = _json_tail(out)
    assert payload["hunks"] == []


def test_diff_top_insertion_mapping(tmp_path, capsys):
    pre = tmp_path / "pre.java"
    post = tmp_path / "post.java"
    pre.write_text("private Object cache;\ncache = null;\n")
    post.write_text("// note\nint flag = 1;\nprivate Object cache;\ncache = null;\n")
    assert run_cli(["diff", str(pre), str(post)]) == 0
    out = capsys.readouterr().out
    payload = _json_tail(out)
    assert payload["hunks"] == [
        {"pre_start": 1, "pre_len": 0, "post_start": 1, "post_len": 2, "kind": "insert"}
    ]
    assert payload["line_map"]["2"] == 4


def test_diff_decl_index_dump(tmp_path, capsys):
    pre = tmp_path / "pre.java"
    post = tmp_path / "post.java"
    pre.write_text("class A {\n  void m() {\n  }\n}\n")
    post.write_text("class A {\n}\n")
    assert run_cli(["diff", str(pre), str(post), "--decl-index"]) == 0
    out = capsys.readouterr().out
    payload = _json_tail(out)
    assert [m["name"] for m in payload["pre_decl_index"]["methods"]] == ["m"]
    assert payload["post_decl_index"]["methods"] == []


def test_diff_one_line_versus_empty(tmp_path, capsys):
    pre = tmp_path / "pre.java"
    post = tmp_path / "post.java"
    pre.write_text("only line\n")
    post.write_text("")
    assert run_cli(["diff", str(pre), str(post)]) == 0
    out = capsys.readouterr().out
    payload = _json_tail(out)
    assert [h["kind"] for h in payload["hunks"]] == ["delete"]


def test_diff_unreadable_file_exits_2(tmp_path, capsys):
    assert run_cli(["diff", str(tmp_path / "nope.java"), str(tmp_path / "nope.java")]) == 2


def test_report_writes_csv_and_figures(tmp_path):
    scenario = shifted_block_scenario()
    paths = scenario.materialize(tmp_path)
    out = tmp_path / "result.json"
    run_cli(_track_args(paths, out, mode="sota"))
    truth = tmp_path / "truth.json"
    truth.write_text(json.dumps([
        {"id": "pre:000000", "status": "persistent"},
        {"id": "pre:000001", "status": "persistent"},
        {"id": "post:000001", "status": "persistent"},
        {"id": "post:000002", "status": "persistent"},
    ]))
    report_dir = tmp_path / "report"
    assert run_cli([
        "report", "--result", str(out), "--ground-truth", str(truth),
        "--out-dir", str(report_dir),
    ]) == 0
    assert (report_dir / "summary.csv").exists()
    assert (report_dir / "status_counts.png").exists()
    assert (report_dir / "precision.csv").exists()
    assert (report_dir / "precision.png").exists()
    summary = (report_dir / "summary.csv").read_text().splitlines()
    assert summary[0] == "status,count"
    assert "removed_fix" in summary[1] or "persistent" in summary[1]


def test_track_with_ground_truth_prints_precision(tmp_path, capsys):
    scenario = top_insertion_scenario()
    paths = scenario.materialize(tmp_path)
    truth = tmp_path / "truth.json"
    truth.write_text(json.dumps([
        {"id": "pre:000000", "status": "persistent"},
        {"id": "post:000000", "status": "persistent"},
    ]))
    out = tmp_path / "result.json"
    code = run_cli(_track_args(paths, out, extra=["--ground-truth", str(truth)]))
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["per_status"]["persistent"]["tp"] == 2


def test_console_entry_point_runs(tmp_path):
    scenario = _identity_scenario()
    paths = scenario.materialize(tmp_path)
    out = tmp_path / "result.json"
    proc = subprocess.run(
        [sys.executable, "-m", "warntrack"] + _track_args(paths, out),
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def test_track_output_is_byte_stable_across_runs(tmp_path):
    scenario = shifted_block_scenario()
    paths = scenario.materialize(tmp_path)
    out1 = tmp_path / "run1.json"
    out2 = tmp_path / "run2.json"
    assert run_cli(_track_args(paths, out1)) == 0
    assert run_cli(_track_args(paths, out2)) == 0
    assert out1.read_bytes() == out2.read_bytes()
