"""Matching strategies and the two warning-tracking pipelines.

The baseline pipeline (``sota`` mode) runs four strategies in strict priority
order, committing each pair at the first stage that accepts it.  The improved
pipeline (``statictracker`` mode) normalizes volatile identifiers, rewrites
metadata through refactoring records, collects strategy votes into a candidate
matrix, and resolves pairs with a maximum-weight assignment.
"""

from __future__ import annotations

import hashlib
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .assignment import CandidateMatrix, solve_assignment
from .declarations import build_decl_index
from .diffing import DiffResult, Side, anchor_offset
from .errors import ConfigurationError, ValidationError
from .fix_rules import classify_removed
from .model import (
    WarningInstance,
    WarningSet,
    exact_key,
    normalize_volatile_identifiers,
)
from .refactorings import RefactoringSet, rewrite_metadata
from .snapshots import RevisionPair, Snapshot

logger = logging.getLogger(__name__)

__all__ = [
    "MatcherConfig",
    "Mode",
    "TrackResult",
    "build_candidate_matrix",
    "exact_match",
    "hash_match",
    "location_match",
    "snippet_match",
    "track_sota",
    "track_statictracker",
]

_TOKEN_RE = re.compile(r"[A-Za-z0-9_$]+|[^\sA-Za-z0-9_$]")
_TOKEN_SEPARATOR = "\x1f"


class Mode(str, Enum):
    SOTA = "sota"
    STATICTRACKER = "statictracker"


@dataclass(frozen=True)
class MatcherConfig:
    location_threshold: int = 3
    hash_top_n: int = 5
    mode: Mode = Mode.STATICTRACKER
    snippet_trim_trailing_ws: bool = True

    def __post_init__(self) -> None:
        if self.location_threshold < 0:
            raise ValidationError("location_threshold must be >= 0")
        if self.hash_top_n < 1:
            raise ValidationError("hash_top_n must be >= 1")


@dataclass
class TrackResult:
    """Matched pairs plus the four evolution-status sets."""

    mode: Mode
    matched_pairs: list[tuple[str, str, str]] = field(default_factory=list)
    removed_fix: set[str] = field(default_factory=set)
    removed_non_fix: set[str] = field(default_factory=set)
    newly_introduced: set[str] = field(default_factory=set)
    persistent_pre: set[str] = field(default_factory=set)
    persistent_post: set[str] = field(default_factory=set)
    classification_reasons: dict[str, str] = field(default_factory=dict)

    @property
    def removed_total(self) -> set[str]:
        return self.removed_fix | self.removed_non_fix

    def check_invariants(self, pre_count: int, post_count: int) -> None:
        """Raise if the pre/post partitions or injectivity are violated."""
        pre_ids = [p for p, _, _ in self.matched_pairs]
        post_ids = [c for _, c, _ in self.matched_pairs]
        if len(set(pre_ids)) != len(pre_ids) or len(set(post_ids)) != len(post_ids):
            raise AssertionError("matched_pairs repeats a stable_id")
        if set(pre_ids) != self.persistent_pre or set(post_ids) != self.persistent_post:
            raise AssertionError("persistent sets disagree with matched_pairs")
        if self.persistent_pre & self.removed_total:
            raise AssertionError("a pre id is both persistent and removed")
        if self.removed_fix & self.removed_non_fix:
            raise AssertionError("a removed id is classified both fix and non-fix")
        if self.persistent_post & self.newly_introduced:
            raise AssertionError("a post id is both persistent and newly introduced")
        if len(self.persistent_pre) + len(self.removed_total) != pre_count:
            raise AssertionError("pre-side partition does not sum to the set size")
        if len(self.persistent_post) + len(self.newly_introduced) != post_count:
            raise AssertionError("post-side partition does not sum to the set size")

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "pairs": [
                {"pre_id": p, "post_id": c, "strategy": s}
                for p, c, s in sorted(self.matched_pairs)
            ],
            "removed_fix": sorted(self.removed_fix),
            "removed_non_fix": sorted(self.removed_non_fix),
            "newly_introduced": sorted(self.newly_introduced),
            "persistent_pre_count": len(self.persistent_pre),
            "persistent_post_count": len(self.persistent_post),
        }

    @classmethod
    def from_json_dict(cls, raw: dict) -> "TrackResult":
        result = cls(mode=Mode(raw["mode"]))
        for entry in raw.get("pairs", []):
            result.matched_pairs.append(
                (entry["pre_id"], entry["post_id"], entry.get("strategy", ""))
            )
        result.removed_fix = set(raw.get("removed_fix", []))
        result.removed_non_fix = set(raw.get("removed_non_fix", []))
        result.newly_introduced = set(raw.get("newly_introduced", []))
        result.persistent_pre = {p for p, _, _ in result.matched_pairs}
        result.persistent_post = {c for _, c, _ in result.matched_pairs}
        return result


# ---------------------------------------------------------------------------
# Strategy functions
# ---------------------------------------------------------------------------


def exact_match(a: WarningInstance, b: WarningInstance) -> bool:
    """Same location, warning type and all code names."""
    return exact_key(a) == exact_key(b)


def _names_equal(a: WarningInstance, b: WarningInstance) -> bool:
    return (
        a.class_name == b.class_name
        and a.method_name == b.method_name
        and a.field_name == b.field_name
    )


def _offsets_within(
    diff: DiffResult, pre_line: int, post_line: int, threshold: int
) -> bool:
    try:
        _, pre_offset = anchor_offset(diff, pre_line, Side.PRE)
        _, post_offset = anchor_offset(diff, post_line, Side.POST)
    except ValidationError as exc:
        logger.debug("location match rejected: %s", exc)
        return False
    return abs(pre_offset - post_offset) <= threshold


def location_match(
    a: WarningInstance, b: WarningInstance, diff: DiffResult, cfg: MatcherConfig
) -> bool:
    """Same type and names, with anchor offsets within the threshold."""
    if a.warning_type != b.warning_type or not _names_equal(a, b):
        return False
    return _offsets_within(diff, a.start_line, b.start_line, cfg.location_threshold)


def _snippet_lines(
    snapshot: Snapshot, path: str, start: int, end: int, trim: bool
) -> list[str] | None:
    lines = snapshot.lines(path)
    if lines is None or start < 1 or end > len(lines):
        logger.debug(
            "snippet unavailable for %s:%d-%d in snapshot %s", path, start, end, snapshot.label
        )
        return None
    selected = lines[start - 1 : end]
    if trim:
        selected = [line.rstrip() for line in selected]
    return selected


def _snippets_equal(
    pre: Snapshot,
    pre_path: str,
    a: WarningInstance,
    post: Snapshot,
    post_path: str,
    b: WarningInstance,
    cfg: MatcherConfig,
) -> bool:
    trim = cfg.snippet_trim_trailing_ws
    pre_snippet = _snippet_lines(pre, pre_path, a.start_line, a.end_line, trim)
    post_snippet = _snippet_lines(post, post_path, b.start_line, b.end_line, trim)
    if pre_snippet is None or post_snippet is None:
        return False
    return pre_snippet == post_snippet


def snippet_match(
    a: WarningInstance,
    b: WarningInstance,
    pre: Snapshot,
    post: Snapshot,
    cfg: MatcherConfig,
) -> bool:
    """Same names and byte-identical snippet text, wherever the lines moved."""
    if not _names_equal(a, b):
        return False
    return _snippets_equal(pre, a.file_path, a, post, b.file_path, b, cfg)


def _hash64(tokens: Sequence[str]) -> str:
    joined = _TOKEN_SEPARATOR.join(tokens)
    return hashlib.blake2b(joined.encode("utf-8"), digest_size=8).hexdigest()


def hash_match(
    a: WarningInstance,
    b: WarningInstance,
    pre: Snapshot,
    post: Snapshot,
    cfg: MatcherConfig,
) -> bool:
    """Token-hash comparison of the two snippets, ignoring names and paths.

    The snippet is tokenized on whitespace and punctuation boundaries; the
    pair matches when the hashes of the first ``hash_top_n`` tokens agree or
    the hashes of the remaining tokens agree (both sides must actually have
    remaining tokens for the latter rule).
    """
    trim = cfg.snippet_trim_trailing_ws
    pre_snippet = _snippet_lines(pre, a.file_path, a.start_line, a.end_line, trim)
    post_snippet = _snippet_lines(post, b.file_path, b.start_line, b.end_line, trim)
    if pre_snippet is None or post_snippet is None:
        return False
    tokens_a = _TOKEN_RE.findall("\n".join(pre_snippet))
    tokens_b = _TOKEN_RE.findall("\n".join(post_snippet))
    if not tokens_a or not tokens_b:
        return False
    n = cfg.hash_top_n
    if _hash64(tokens_a[:n]) == _hash64(tokens_b[:n]):
        return True
    latter_a, latter_b = tokens_a[n:], tokens_b[n:]
    return bool(latter_a and latter_b) and _hash64(latter_a) == _hash64(latter_b)


# ---------------------------------------------------------------------------
# Pipeline plumbing
# ---------------------------------------------------------------------------


def _warnings_of(source: WarningSet | Iterable[WarningInstance]) -> list[WarningInstance]:
    if isinstance(source, WarningSet):
        return list(source.warnings)
    return list(source)


def _diff_for(
    diffs: Mapping[tuple[str, str], DiffResult], pre_path: str, post_path: str
) -> DiffResult:
    diff = diffs.get((pre_path, post_path))
    if diff is None:
        raise ConfigurationError(
            f"no diff available for changed file {pre_path!r} (post side {post_path!r})"
        )
    return diff


def _classify(
    result: TrackResult,
    removed: list[WarningInstance],
    pair: RevisionPair,
    diffs: Mapping[tuple[str, str], DiffResult],
) -> None:
    if not removed:
        return
    pre_indices = {}
    post_indices = {}
    for w in removed:
        if w.file_path not in pre_indices and w.file_path in pair.pre.files:
            pre_indices[w.file_path] = build_decl_index(
                pair.pre.files[w.file_path], w.file_path
            )
        post_path = pair.post_path_for(w.file_path)
        if post_path not in post_indices and post_path in pair.post.files:
            post_indices[post_path] = build_decl_index(
                pair.post.files[post_path], post_path
            )
    classified = classify_removed(removed, pair, diffs, pre_indices, post_indices)
    result.removed_fix = {w.stable_id for w in classified.fix}
    result.removed_non_fix = {w.stable_id for w in classified.non_fix}
    result.classification_reasons = dict(classified.reasons)


class _ExactIndex:
    """Post warnings bucketed by exact key, consumed in deterministic order."""

    def __init__(self, post_warnings: Iterable[WarningInstance]):
        self._buckets: dict[tuple, list[WarningInstance]] = {}
        for c in post_warnings:
            self._buckets.setdefault(exact_key(c), []).append(c)

    def take(self, key: tuple, consumed: set[str]) -> WarningInstance | None:
        for candidate in self._buckets.get(key, ()):
            if candidate.stable_id not in consumed:
                return candidate
        return None


def track_sota(
    pre_set: WarningSet,
    post_set: WarningSet,
    pair: RevisionPair,
    diffs: Mapping[tuple[str, str], DiffResult],
    cfg: MatcherConfig | None = None,
) -> TrackResult:
    """Baseline multi-stage tracking.

    Stages run in priority order over the whole sets: exact first, then
    location, snippet and hash, each committing first-come pairs and consuming
    the matched post warning.  Warnings in unchanged files only ever take part
    in the exact stage.  Pre warnings are compared against post warnings of
    the same (rename-adjusted) file and warning type.
    """
    cfg = cfg or MatcherConfig(mode=Mode.SOTA)
    result = TrackResult(mode=Mode.SOTA)

    posts_by_file: dict[str, list[WarningInstance]] = {}
    for c in post_set:
        posts_by_file.setdefault(c.file_path, []).append(c)
    exact_index = _ExactIndex(post_set)

    consumed: set[str] = set()
    unmatched_pre: list[WarningInstance] = []

    # Exact stage covers every warning, including those in unchanged files.
    for w in pre_set:
        translated = exact_key(w)._replace(file_path=pair.post_path_for(w.file_path))
        candidate = exact_index.take(translated, consumed)
        if candidate is not None:
            consumed.add(candidate.stable_id)
            result.matched_pairs.append((w.stable_id, candidate.stable_id, "exact"))
        else:
            unmatched_pre.append(w)

    def run_stage(tag: str, accept) -> None:
        nonlocal unmatched_pre
        still_unmatched = []
        for w in unmatched_pre:
            if w.file_path not in pair.changed_files:
                still_unmatched.append(w)
                continue
            post_path = pair.post_path_for(w.file_path)
            matched = None
            for c in posts_by_file.get(post_path, ()):
                if c.stable_id in consumed or c.warning_type != w.warning_type:
                    continue
                if accept(w, c, post_path):
                    matched = c
                    break
            if matched is None:
                still_unmatched.append(w)
            else:
                consumed.add(matched.stable_id)
                result.matched_pairs.append((w.stable_id, matched.stable_id, tag))
        unmatched_pre = still_unmatched

    run_stage(
        "location",
        lambda w, c, post_path: location_match(
            w, c, _diff_for(diffs, w.file_path, post_path), cfg
        ),
    )
    run_stage(
        "snippet",
        lambda w, c, post_path: _names_equal(w, c)
        and _snippets_equal(pair.pre, w.file_path, w, pair.post, post_path, c, cfg),
    )
    run_stage(
        "hash",
        lambda w, c, post_path: hash_match(w, c, pair.pre, pair.post, cfg),
    )

    result.persistent_pre = {p for p, _, _ in result.matched_pairs}
    result.persistent_post = {c for _, c, _ in result.matched_pairs}
    result.newly_introduced = {
        c.stable_id for c in post_set if c.stable_id not in consumed
    }
    _classify(result, unmatched_pre, pair, diffs)
    return result


def build_candidate_matrix(
    pre_warnings: WarningSet | Sequence[WarningInstance],
    post_warnings: WarningSet | Sequence[WarningInstance],
    pair: RevisionPair,
    diffs: Mapping[tuple[str, str], DiffResult],
    cfg: MatcherConfig | None = None,
    original_paths: Mapping[str, str] | None = None,
) -> CandidateMatrix:
    """Strategy-vote matrix over already normalized (and rewritten) warnings.

    Candidates are limited to pairs with equal warning type and equal
    class/method/field names, within the same rename-adjusted file; each of
    the snippet and location strategies contributes one point.

    ``original_paths`` maps stable ids to pre-snapshot paths for warnings
    whose ``file_path`` was rewritten by a refactoring record.
    """
    cfg = cfg or MatcherConfig()
    pre_list = _warnings_of(pre_warnings)
    post_list = _warnings_of(post_warnings)
    original_paths = original_paths or {}

    post_buckets: dict[tuple, list[int]] = {}
    for j, c in enumerate(post_list):
        key = (c.warning_type, c.class_name, c.method_name, c.field_name, c.file_path)
        post_buckets.setdefault(key, []).append(j)

    weights = [[0] * len(post_list) for _ in pre_list]
    for i, w in enumerate(pre_list):
        pre_path = original_paths.get(w.stable_id, w.file_path)
        if w.file_path != pre_path:
            effective_post_path = w.file_path
        else:
            effective_post_path = pair.post_path_for(pre_path)
        key = (
            w.warning_type,
            w.class_name,
            w.method_name,
            w.field_name,
            effective_post_path,
        )
        for j in post_buckets.get(key, ()):
            c = post_list[j]
            votes = 0
            if _snippets_equal(
                pair.pre, pre_path, w, pair.post, effective_post_path, c, cfg
            ):
                votes += 1
            diff = _diff_for(diffs, pre_path, effective_post_path)
            if _offsets_within(diff, w.start_line, c.start_line, cfg.location_threshold):
                votes += 1
            weights[i][j] = votes

    return CandidateMatrix(
        pre_ids=tuple(w.stable_id for w in pre_list),
        post_ids=tuple(c.stable_id for c in post_list),
        weights=tuple(tuple(row) for row in weights),
        pre_lines=tuple(w.start_line for w in pre_list),
        post_lines=tuple(c.start_line for c in post_list),
    )


def _vote_tag(weight: int, snippet_vote: bool) -> str:
    if weight == 2:
        return "snippet+location"
    return "snippet" if snippet_vote else "location"


def track_statictracker(
    pre_set: WarningSet,
    post_set: WarningSet,
    pair: RevisionPair,
    diffs: Mapping[tuple[str, str], DiffResult],
    refs: RefactoringSet | None = None,
    cfg: MatcherConfig | None = None,
) -> TrackResult:
    """Improved tracking pipeline.

    Volatile identifiers are normalized in both sets; warnings in unchanged
    files are matched through a hash index of exact keys; the remaining pre
    warnings are rewritten through refactoring records; snippet and location
    votes form a candidate matrix that a maximum-weight assignment resolves.
    Hash-based matching is not used, and exact matching never runs inside
    changed files.
    """
    cfg = cfg or MatcherConfig()
    refs = refs or RefactoringSet()
    result = TrackResult(mode=Mode.STATICTRACKER)

    norm_pre = normalize_volatile_identifiers(pre_set)
    norm_post = normalize_volatile_identifiers(post_set)

    exact_index = _ExactIndex(norm_post)
    consumed: set[str] = set()
    removed: list[WarningInstance] = []
    changed_pre: list[WarningInstance] = []

    for w in norm_pre:
        if w.file_path in pair.changed_files:
            changed_pre.append(w)
            continue
        translated = exact_key(w)._replace(file_path=pair.post_path_for(w.file_path))
        candidate = exact_index.take(translated, consumed)
        if candidate is not None:
            consumed.add(candidate.stable_id)
            result.matched_pairs.append((w.stable_id, candidate.stable_id, "exact"))
        else:
            removed.append(w)

    rewritten = [rewrite_metadata(w, refs) for w in changed_pre]
    original_paths = {w.stable_id: w.file_path for w in changed_pre}
    remaining_post = [c for c in norm_post if c.stable_id not in consumed]

    matrix = build_candidate_matrix(
        rewritten, remaining_post, pair, diffs, cfg, original_paths
    )
    assigned = solve_assignment(matrix)

    matched_pre_ids = set()
    for i, j in assigned:
        w = rewritten[i]
        c = remaining_post[j]
        pre_path = original_paths[w.stable_id]
        post_path = w.file_path if w.file_path != pre_path else pair.post_path_for(pre_path)
        snippet_vote = _snippets_equal(
            pair.pre, pre_path, w, pair.post, post_path, c, cfg
        )
        tag = _vote_tag(matrix.weight(i, j), snippet_vote)
        result.matched_pairs.append((w.stable_id, c.stable_id, tag))
        matched_pre_ids.add(w.stable_id)
        consumed.add(c.stable_id)

    removed.extend(w for w in changed_pre if w.stable_id not in matched_pre_ids)

    result.persistent_pre = {p for p, _, _ in result.matched_pairs}
    result.persistent_post = {c for _, c, _ in result.matched_pairs}
    result.newly_introduced = {
        c.stable_id for c in norm_post if c.stable_id not in consumed
    }
    _classify(result, removed, pair, diffs)
    return result
