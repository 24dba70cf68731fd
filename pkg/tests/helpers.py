"""Shared fixture builders for the test suite.

The scenario builders construct small synthetic revision pairs exercising the
documented failure modes: a plain two-line top insertion, a shifted block of
near-duplicate checks, a method rename, and a volatile field suffix change.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from warntrack import (
    Detector,
    RefactoringSet,
    Snapshot,
    WarningInstance,
    WarningSet,
    compute_pair_diffs,
    compute_revision_pair,
    parse_refactorings,
    warning_set_to_json,
)


def make_warning(
    *,
    detector: Detector = Detector.PMD,
    warning_type: str = "NullAssignment",
    project: str = "demo",
    class_name: str = "",
    method_name: str = "",
    field_name: str = "",
    file_path: str = "a/Demo.java",
    start_line: int = 1,
    end_line: int | None = None,
) -> WarningInstance:
    return WarningInstance(
        detector=detector,
        warning_type=warning_type,
        project=project,
        class_name=class_name,
        method_name=method_name,
        field_name=field_name,
        file_path=file_path,
        start_line=start_line,
        end_line=end_line if end_line is not None else start_line,
    )


def make_set(label: str, warnings: list[WarningInstance]) -> WarningSet:
    return WarningSet.from_instances(label, warnings)


def snapshot(label: str, files: dict[str, str]) -> Snapshot:
    return Snapshot(label=label, files=dict(files))


@dataclass
class Scenario:
    pre_set: WarningSet
    post_set: WarningSet
    pair: object
    diffs: dict
    refs: RefactoringSet = RefactoringSet()
    refs_json: str | None = None

    @property
    def pre_snapshot(self):
        return self.pair.pre

    @property
    def post_snapshot(self):
        return self.pair.post

    def materialize(self, root: Path, renames: dict[str, str] | None = None) -> dict[str, str]:
        """Write snapshots and reports to disk for CLI-level tests."""
        paths: dict[str, str] = {}
        for side, snap in (("pre", self.pair.pre), ("post", self.pair.post)):
            src = root / f"{side}_src"
            for rel, text in snap.files.items():
                target = src / rel
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(text, encoding="utf-8")
            src.mkdir(parents=True, exist_ok=True)
            paths[f"{side}_src"] = str(src)
        for side, warning_set in (("pre", self.pre_set), ("post", self.post_set)):
            report = root / f"{side}_report.json"
            report.write_text(warning_set_to_json(warning_set), encoding="utf-8")
            paths[f"{side}_report"] = str(report)
        if self.refs_json:
            refs_path = root / "refactorings.json"
            refs_path.write_text(self.refs_json, encoding="utf-8")
            paths["refactorings"] = str(refs_path)
        if renames:
            renames_path = root / "renames.json"
            renames_path.write_text(
                json.dumps(
                    [{"pre_path": k, "post_path": v} for k, v in renames.items()]
                ),
                encoding="utf-8",
            )
            paths["renames"] = str(renames_path)
        return paths


def build_scenario(
    pre_files: dict[str, str],
    post_files: dict[str, str],
    pre_warnings: list[WarningInstance],
    post_warnings: list[WarningInstance],
    renames: dict[str, str] | None = None,
    refs_json: str | None = None,
) -> Scenario:
    pair = compute_revision_pair(
        snapshot("pre", pre_files), snapshot("post", post_files), renames or {}
    )
    refs = parse_refactorings(refs_json) if refs_json else RefactoringSet()
    diffs = compute_pair_diffs(pair, refs)
    return Scenario(
        pre_set=make_set("pre", pre_warnings),
        post_set=make_set("post", post_warnings),
        pair=pair,
        diffs=diffs,
        refs=refs,
        refs_json=refs_json,
    )


# ---------------------------------------------------------------------------
# Scenario: two lines inserted above a single warning (location match case)
# ---------------------------------------------------------------------------

def top_insertion_scenario() -> Scenario:
    path = "cache/CacheHolder.java"
    pre_text = "private Object cache;\ncache = null; // reset\nvoid noop() { }\n"
    post_text = (
        "// audit begin\n"
        "int auditFlag = 1;\n"
        "private Object cache;\n"
        "cache = null; // reset\n"
        "void noop() { }\n"
    )
    warning = dict(
        warning_type="NullAssignment",
        class_name="CacheHolder",
        method_name="reset",
        file_path=path,
    )
    return build_scenario(
        {path: pre_text},
        {path: post_text},
        [make_warning(start_line=2, **warning)],
        [make_warning(start_line=4, **warning)],
    )


# ---------------------------------------------------------------------------
# Scenario: a block of three near-duplicate checks shifted down by four lines
# ---------------------------------------------------------------------------

_CHECK_A = 'if (alpha == null) { fail("alpha must be set before check"); }'
_CHECK_B = 'if (beta == null) { fail("beta must be set before check"); }'
# The middle check is edited both in its first tokens and in its tail, so
# neither token-hash half survives the change.
_CHECK_B_EDITED = 'if (null == beta) { fail("beta must be set before this check"); }'
_CHECK_C = 'if (gamma == null) { fail("gamma must be set before check"); }'


def shifted_block_scenario() -> Scenario:
    """Three same-type warnings move from lines 201/203/205 to 205/207/209.

    Two separate two-line insertions above the block shift everything by
    four lines; the middle check's text is edited in place.  The per-warning
    field names carry compiler-generated numeric suffixes that were
    renumbered between the two analysis runs, and the old suffix of the third
    warning collides with the new suffix of the first.
    """
    path = "shift/Dup.java"
    body = [f"int pad{i} = {i};" for i in range(1, 201)]  # lines 1..200, all unique
    pre_lines = list(body)
    pre_lines.append(_CHECK_A)      # line 201
    pre_lines.append("int sepOne = -1;")  # line 202
    pre_lines.append(_CHECK_B)      # line 203
    pre_lines.append("int sepTwo = -2;")  # line 204
    pre_lines.append(_CHECK_C)      # line 205
    pre_lines.extend(f"int tail{i} = {i};" for i in range(1, 6))

    post_lines = ["// prologue note one", "// prologue note two"]
    post_lines.extend(body[:100])
    post_lines.extend(["// interlude note one", "// interlude note two"])
    post_lines.extend(body[100:200])
    post_lines.append(_CHECK_A)     # line 205
    post_lines.append("int sepOne = -1;")
    post_lines.append(_CHECK_B_EDITED)  # line 207
    post_lines.append("int sepTwo = -2;")
    post_lines.append(_CHECK_C)     # line 209
    post_lines.extend(f"int tail{i} = {i};" for i in range(1, 6))

    common = dict(warning_type="EqualsNull", class_name="Dup", file_path=path)
    pre_warnings = [
        make_warning(start_line=201, field_name="chk$1", **common),
        make_warning(start_line=203, field_name="chk$2", **common),
        make_warning(start_line=205, field_name="chk$5", **common),
    ]
    post_warnings = [
        make_warning(start_line=205, field_name="chk$5", **common),
        make_warning(start_line=207, field_name="chk$6", **common),
        make_warning(start_line=209, field_name="chk$7", **common),
    ]
    return build_scenario(
        {path: "\n".join(pre_lines) + "\n"},
        {path: "\n".join(post_lines) + "\n"},
        pre_warnings,
        post_warnings,
    )


# ---------------------------------------------------------------------------
# Scenario: method rename moving a duplicated-literal warning
# ---------------------------------------------------------------------------

def method_rename_scenario(with_record: bool) -> Scenario:
    path = "hosts/HostCheck.java"
    pre_lines = ["package hosts;", "public class HostCheck {"]
    pre_lines.append("  public void setupHosts() {")  # line 3
    pre_lines.extend(f"    probe({i});" for i in range(1, 91))  # lines 4..93
    pre_lines.append('    use("host1"); // duplicated literal')  # line 94
    pre_lines.append("  }")  # line 95
    pre_lines.append("}")  # line 96

    post_lines = ["package hosts;", "public class HostCheck {"]
    post_lines.append("  public void initHosts() {")
    kept = [f"    probe({i});" for i in range(1, 91) if not 40 <= i <= 50]
    post_lines.extend(kept)  # 11 body lines removed
    post_lines.append('    use("host1"); // duplicated literal')  # line 83
    post_lines.append("  }")
    post_lines.append("}")

    refs_json = None
    if with_record:
        refs_json = """
        [
          {
            "kind": "RenameMethod",
            "before": {"file_path": "hosts/HostCheck.java", "class_name": "HostCheck",
                       "method_name": "setupHosts"},
            "after": {"file_path": "hosts/HostCheck.java", "class_name": "HostCheck",
                      "method_name": "initHosts"}
          }
        ]
        """

    common = dict(
        warning_type="AvoidDuplicateLiterals", class_name="HostCheck", file_path=path
    )
    return build_scenario(
        {path: "\n".join(pre_lines) + "\n"},
        {path: "\n".join(post_lines) + "\n"},
        [make_warning(start_line=94, method_name="setupHosts", **common)],
        [make_warning(start_line=83, method_name="initHosts", **common)],
        refs_json=refs_json,
    )


# ---------------------------------------------------------------------------
# Scenario: volatile field suffix renumbered while the snippet is unchanged
# ---------------------------------------------------------------------------

_SCALA_LINE = (
    "groups.map(_ -> getAcl(opts, Set(Read))).toMap[ResourcePatternFilter, Set[Acl]]"
)


def volatile_suffix_scenario() -> Scenario:
    path = "kafka/admin/AclCommand.scala"
    pre_lines = [f"val ctx{i} = {i}" for i in range(1, 206)]  # lines 1..205
    pre_lines.append(_SCALA_LINE)  # line 206
    pre_lines.extend(f"val tail{i} = {i}" for i in range(1, 5))

    post_lines = [f"val added{i} = {i}" for i in range(1, 125)]  # 124 new lines
    post_lines.extend(pre_lines)  # old line 206 is now line 330

    common = dict(
        detector=Detector.SPOTBUGS,
        warning_type="SE_BAD_FIELD",
        project="kafka",
        class_name="AclCommand",
        file_path=path,
    )
    return build_scenario(
        {path: "\n".join(pre_lines) + "\n"},
        {path: "\n".join(post_lines) + "\n"},
        [make_warning(start_line=206, field_name="opts$4", **common)],
        [make_warning(start_line=330, field_name="opts$1", **common)],
    )
