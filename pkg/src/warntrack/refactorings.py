"""Refactoring records and metadata rewriting.

Records come from an external refactoring detector (converted to the JSON
format documented in the README).  Rewriting replaces the name and path fields
of a pre-revision warning with the post-revision values so the matching
strategies compare consistent metadata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable

from .errors import ReportParseError, RewriteConflictError, ValidationError
from .model import WarningInstance

__all__ = [
    "Locator",
    "RefactoringRecord",
    "RefactoringSet",
    "SUPPORTED_KINDS",
    "parse_refactorings",
    "rewrite_metadata",
]

# Kinds that modify the name or path metadata a detector reports.  Unknown
# kinds are retained but inert so they can never corrupt metadata.
SUPPORTED_KINDS = frozenset(
    {
        "RenameClass",
        "MoveClass",
        "MoveAndRenameClass",
        "RenameMethod",
        "MoveMethod",
        "PullUpMethod",
        "PushDownMethod",
        "ExtractMethod",
        "InlineMethod",
        "RenameField",
        "MoveField",
        "PullUpField",
        "PushDownField",
        "RenameVariable",
        "RenameParameter",
        "ExtractClass",
        "ExtractSuperclass",
        "ExtractInterface",
        "RenamePackage",
        "MoveSourceFolder",
        "ChangeMethodSignature",
        "ExtractAndMoveMethod",
    }
)

# Kinds whose applicability is limited to warnings inside the refactored
# source fragment; their before-locator carries a line range.
_FRAGMENT_KINDS = frozenset({"ExtractMethod", "ExtractAndMoveMethod"})


@dataclass(frozen=True)
class Locator:
    """Position of a code element before or after a refactoring."""

    file_path: str
    class_name: str = ""
    method_name: str | None = None
    field_name: str | None = None
    start_line: int | None = None
    end_line: int | None = None

    def __post_init__(self) -> None:
        if not self.file_path:
            raise ValidationError("locator file_path must be non-empty")


@dataclass(frozen=True)
class RefactoringRecord:
    kind: str
    before: Locator
    after: Locator

    @property
    def inert(self) -> bool:
        return self.kind not in SUPPORTED_KINDS

    def __post_init__(self) -> None:
        if self.before == self.after:
            raise ValidationError(
                f"{self.kind} record has identical before and after locators"
            )


@dataclass(frozen=True)
class RefactoringSet:
    records: tuple[RefactoringRecord, ...] = ()

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)


def _parse_locator(raw: dict, which: str, idx: int) -> Locator:
    if not isinstance(raw, dict):
        raise ValidationError(f"record #{idx} {which} locator must be an object")
    if "file_path" not in raw:
        raise ValidationError(f"record #{idx} {which} locator is missing file_path")
    return Locator(
        file_path=str(raw["file_path"]),
        class_name=str(raw.get("class_name", "")),
        method_name=None if raw.get("method_name") is None else str(raw["method_name"]),
        field_name=None if raw.get("field_name") is None else str(raw["field_name"]),
        start_line=None if raw.get("start_line") is None else int(raw["start_line"]),
        end_line=None if raw.get("end_line") is None else int(raw["end_line"]),
    )


def parse_refactorings(json_text: str) -> RefactoringSet:
    """Parse the JSON array of refactoring records."""
    try:
        raw = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise ReportParseError(
            f"malformed refactorings JSON: {exc.msg}", exc.lineno, exc.colno
        ) from exc
    if not isinstance(raw, list):
        raise ValidationError("refactorings JSON must be an array")

    records = []
    for idx, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ValidationError(f"record #{idx} is not an object")
        for key in ("kind", "before", "after"):
            if key not in entry:
                raise ValidationError(f"record #{idx} is missing {key!r}")
        records.append(
            RefactoringRecord(
                kind=str(entry["kind"]),
                before=_parse_locator(entry["before"], "before", idx),
                after=_parse_locator(entry["after"], "after", idx),
            )
        )
    return RefactoringSet(records=tuple(records))


def _locator_matches(w: WarningInstance, record: RefactoringRecord) -> bool:
    before = record.before
    if before.file_path != w.file_path:
        return False
    if before.class_name and before.class_name != w.class_name:
        return False
    if before.method_name is not None and before.method_name != w.method_name:
        return False
    if record.kind in ("RenameVariable", "RenameParameter"):
        # Detectors report the variable in the field slot.
        if before.field_name is None or before.field_name != w.field_name:
            return False
    elif before.field_name is not None and before.field_name != w.field_name:
        return False
    if record.kind in _FRAGMENT_KINDS:
        if before.start_line is None or before.end_line is None:
            return False
        if not (before.start_line <= w.start_line and w.end_line <= before.end_line):
            return False
    return True


def _updates_for(w: WarningInstance, record: RefactoringRecord) -> dict[str, str]:
    after = record.after
    updates: dict[str, str] = {}
    if after.file_path and after.file_path != w.file_path:
        updates["file_path"] = after.file_path
    if after.class_name and after.class_name != w.class_name:
        updates["class_name"] = after.class_name
    if after.method_name is not None and after.method_name != w.method_name:
        updates["method_name"] = after.method_name
    if record.kind in ("RenameVariable", "RenameParameter"):
        if after.field_name is not None and after.field_name != w.field_name:
            updates["field_name"] = after.field_name
    elif after.field_name is not None and after.field_name != w.field_name:
        updates["field_name"] = after.field_name
    return updates


def rewrite_metadata(w: WarningInstance, refs: RefactoringSet | Iterable[RefactoringRecord]) -> WarningInstance:
    """Return a replica of ``w`` with names rewritten per applicable records.

    Records apply in input order against the evolving replica; the original is
    never mutated.  Warning type, lines, detector and stable id are preserved.
    Two records that rewrite the same field to different values raise
    :class:`RewriteConflictError`.
    """
    current = w
    applied: dict[str, tuple[str, RefactoringRecord]] = {}
    for record in refs:
        if record.inert:
            continue
        if not _locator_matches(current, record):
            continue
        updates = _updates_for(current, record)
        for field_name, value in updates.items():
            if field_name in applied and applied[field_name][0] != value:
                raise RewriteConflictError(field_name, applied[field_name][1], record)
            applied[field_name] = (value, record)
        if updates:
            current = replace(current, **updates)
    return current
