"""Split removed warnings into fixed and non-fixed.

The rules are deliberately conservative about declaring a fix: deletions and
untouched code regions are non-fixes, and only warnings whose surrounding
context shows a plausible repairing edit fall through to the fix default.
Every decision carries a trace tag naming the rule that fired.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .declarations import Decl, DeclIndex, DeclKind, locate_context
from .diffing import DiffResult, HunkKind, RegionChange, region_change_kind
from .errors import ConfigurationError
from .model import WarningInstance
from .snapshots import RevisionPair

__all__ = ["ClassifiedRemovals", "classify_removed"]

# Trace tags, one per decision branch.
CONTEXT_DELETED = "context_deleted"
DECLARATION_MODIFIED = "declaration_modified"
DECLARATION_UNMODIFIED = "declaration_unmodified"
SCOPE_UNCHANGED = "scope_unchanged"
DELETIONS_ONLY = "deletions_only"
FIELD_MODIFIED = "field_modified"
FIELD_UNTOUCHED = "field_untouched"
TAIL_SCOPE_UNCHANGED = "tail_scope_unchanged"
DEFAULT_FIX = "default_fix"

_FIX_TAGS = {DECLARATION_MODIFIED, FIELD_MODIFIED, DEFAULT_FIX}


@dataclass
class ClassifiedRemovals:
    fix: tuple[WarningInstance, ...]
    non_fix: tuple[WarningInstance, ...]
    reasons: dict[str, str] = field(default_factory=dict)


def _delete_ranges(diff: DiffResult) -> list[tuple[int, int]]:
    return [
        (h.pre_start, h.pre_end) for h in diff.hunks if h.kind is HunkKind.DELETE
    ]


def _fully_deleted(decl: Decl, diff: DiffResult) -> bool:
    """Whether every line of the declaration's range lies in delete hunks."""
    ranges = _delete_ranges(diff)
    line = decl.start_line
    for start, end in ranges:
        if line < start:
            return False
        if line <= end:
            line = end + 1
        if line > decl.end_line:
            return True
    return line > decl.end_line


def _find_post_decl(decl: Decl, post_index: DeclIndex | None) -> Decl | None:
    if post_index is None:
        return None
    if decl.kind is DeclKind.CLASS:
        pool = post_index.classes
    elif decl.kind is DeclKind.METHOD:
        pool = post_index.methods
    else:
        pool = post_index.fields
    for candidate in pool:
        if candidate.name == decl.name:
            return candidate
    return None


def _declaration_modified(
    decl: Decl,
    diff: DiffResult,
    pair: RevisionPair,
    pre_path: str,
    post_index: DeclIndex | None,
    post_path: str,
) -> bool:
    """The declaration line sits in a replace hunk and its text changed.

    Pure reformatting (whitespace only) does not count.  If the post-side
    declaration cannot be found by name, the signature is considered changed.
    """
    in_replace = any(
        h.kind is HunkKind.REPLACE and h.pre_start <= decl.declaration_line <= h.pre_end
        for h in diff.hunks
    )
    if not in_replace:
        return False
    pre_lines = pair.pre.lines(pre_path) or []
    if decl.declaration_line > len(pre_lines):
        return True
    pre_text = pre_lines[decl.declaration_line - 1].strip()
    post_decl = _find_post_decl(decl, post_index)
    if post_decl is None:
        return True
    post_lines = pair.post.lines(post_path) or []
    if post_decl.declaration_line > len(post_lines):
        return True
    return pre_text != post_lines[post_decl.declaration_line - 1].strip()


def _word_pattern(identifier: str) -> re.Pattern[str]:
    return re.compile(
        r"(?<![A-Za-z0-9_$])" + re.escape(identifier) + r"(?![A-Za-z0-9_$])"
    )


def _field_mentioned_in_changes(
    field_name: str,
    scope: tuple[int, int],
    diff: DiffResult,
    pair: RevisionPair,
    pre_path: str,
    post_path: str,
) -> bool:
    """Whether a changed line inside the scope names the field as a word.

    Both sides of each intersecting hunk count: the removed pre lines within
    the scope and the replacement or inserted post lines.
    """
    pattern = _word_pattern(field_name)
    pre_lines = pair.pre.lines(pre_path) or []
    post_lines = pair.post.lines(post_path) or []
    start, end = scope
    for h in diff.hunks:
        if not h.intersects_pre(start, end):
            continue
        for line in range(max(h.pre_start, start), min(h.pre_end, end) + 1):
            if line <= len(pre_lines) and pattern.search(pre_lines[line - 1]):
                return True
        for line in range(h.post_start, h.post_end + 1):
            if line <= len(post_lines) and pattern.search(post_lines[line - 1]):
                return True
    return False


def classify_removed(
    removed: Iterable[WarningInstance],
    pair: RevisionPair,
    diffs: Mapping[tuple[str, str], DiffResult],
    pre_indices: Mapping[str, DeclIndex],
    post_indices: Mapping[str, DeclIndex],
) -> ClassifiedRemovals:
    """Label each removed warning as fix or non-fix with a trace tag.

    Warnings whose context cannot be located skip the structural rules and
    fall through to the fix default.
    """
    fix: list[WarningInstance] = []
    non_fix: list[WarningInstance] = []
    reasons: dict[str, str] = {}

    for w in sorted(removed, key=lambda x: x.stable_id):
        post_path = pair.post_path_for(w.file_path)
        diff = diffs.get((w.file_path, post_path))
        if diff is None:
            raise ConfigurationError(
                f"no diff available for removed warning's file {w.file_path!r}"
            )
        tag = _classify_one(w, pair, diff, pre_indices.get(w.file_path),
                            post_indices.get(post_path), post_path)
        reasons[w.stable_id] = tag
        if tag in _FIX_TAGS:
            fix.append(w)
        else:
            non_fix.append(w)

    return ClassifiedRemovals(fix=tuple(fix), non_fix=tuple(non_fix), reasons=reasons)


def _classify_one(
    w: WarningInstance,
    pair: RevisionPair,
    diff: DiffResult,
    pre_index: DeclIndex | None,
    post_index: DeclIndex | None,
    post_path: str,
) -> str:
    if pair.is_deleted_file(w.file_path):
        return CONTEXT_DELETED

    if pre_index is not None:
        cls, mth, fld = locate_context(w, pre_index)
    else:
        cls, mth, fld = None, None, None
    located = [d for d in (cls, mth, fld) if d is not None]

    if any(_fully_deleted(d, diff) for d in located):
        return CONTEXT_DELETED

    same_range = [
        d for d in located if (w.start_line, w.end_line) == d.range()
    ]
    if same_range:
        if any(
            _declaration_modified(d, diff, pair, w.file_path, post_index, post_path)
            for d in same_range
        ):
            return DECLARATION_MODIFIED
        return DECLARATION_UNMODIFIED

    scope_decl = None
    if mth is not None and mth.start_line <= w.start_line and w.end_line <= mth.end_line:
        scope_decl = mth
    elif cls is not None and cls.start_line <= w.start_line and w.end_line <= cls.end_line:
        # Class-level warnings use the class body as the repair scope.
        scope_decl = cls

    if scope_decl is not None:
        scope = scope_decl.range()
        change = region_change_kind(diff, scope)
        if change is RegionChange.UNCHANGED:
            return SCOPE_UNCHANGED
        if change is RegionChange.DELETIONS_ONLY:
            return DELETIONS_ONLY
        if fld is not None:
            if _field_mentioned_in_changes(
                fld.name, scope, diff, pair, w.file_path, post_path
            ):
                return FIELD_MODIFIED
            return FIELD_UNTOUCHED
        if w.start_line == w.end_line:
            tail = (w.end_line, scope_decl.end_line)
            if not any(h.intersects_pre(*tail) for h in diff.hunks):
                return TAIL_SCOPE_UNCHANGED

    return DEFAULT_FIX
